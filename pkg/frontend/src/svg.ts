/**
 * Dependency-free SVG construction: linear scales, axes, polylines and
 * markers. Output is deterministic for a given input (fixed precision,
 * fixed ordering), so rendered files are byte-stable.
 */

export interface Extent {
    min: number;
    max: number;
}

export function extentOf(values: number[], pad = 0.05): Extent {
    let min = Infinity, max = -Infinity;
    for (const v of values) {
        if (!Number.isFinite(v)) continue;
        if (v < min) min = v;
        if (v > max) max = v;
    }
    if (!(min <= max)) throw new Error("extent of no finite values");
    if (min === max) {
        const eps = Math.max(Math.abs(min) * 0.1, 1e-9);
        return { min: min - eps, max: max + eps };
    }
    const span = max - min;
    return { min: min - pad * span, max: max + pad * span };
}

export class LinearScale {
    constructor(public domain: Extent, public range: [number, number]) {}

    map(v: number): number {
        const t = (v - this.domain.min) / (this.domain.max - this.domain.min);
        return this.range[0] + t * (this.range[1] - this.range[0]);
    }

    ticks(count = 6): number[] {
        const span = this.domain.max - this.domain.min;
        const step = niceStep(span / count);
        const start = Math.ceil(this.domain.min / step) * step;
        const out: number[] = [];
        for (let v = start; v <= this.domain.max + 1e-12 * span; v += step) {
            out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
        }
        return out;
    }
}

function niceStep(raw: number): number {
    const mag = Math.pow(10, Math.floor(Math.log10(raw)));
    const norm = raw / mag;
    if (norm <= 1) return mag;
    if (norm <= 2) return 2 * mag;
    if (norm <= 5) return 5 * mag;
    return 10 * mag;
}

export function fmt(v: number, digits = 6): string {
    if (v === 0) return "0";
    return Number(v.toPrecision(digits)).toString();
}

const XML_ESCAPES: Record<string, string> = {
    "&": "&amp;", "<": "&lt;", ">": "&gt;", '"': "&quot;",
};

export function esc(text: string): string {
    return text.replace(/[&<>"]/g, (c) => XML_ESCAPES[c]);
}

export class SvgDoc {
    private parts: string[] = [];

    constructor(public width: number, public height: number, title: string) {
        this.parts.push(
            `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
            `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`);
        this.parts.push(`<title>${esc(title)}</title>`);
        this.parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
    }

    raw(fragment: string): void {
        this.parts.push(fragment);
    }

    text(x: number, y: number, content: string, attrs = ""): void {
        this.parts.push(`<text x="${fmt(x)}" y="${fmt(y)}" ${attrs}>${esc(content)}</text>`);
    }

    line(x1: number, y1: number, x2: number, y2: number, attrs: string): void {
        this.parts.push(
            `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ${attrs}/>`);
    }

    /** Polyline through screen-space points; splits at non-finite gaps. */
    path(points: (readonly [number, number] | null)[], attrs: string): void {
        let d = "";
        let pen = false;
        for (const p of points) {
            if (p === null || !Number.isFinite(p[0]) || !Number.isFinite(p[1])) {
                pen = false;
                continue;
            }
            d += `${pen ? "L" : "M"}${fmt(p[0], 7)} ${fmt(p[1], 7)}`;
            pen = true;
        }
        if (d) this.parts.push(`<path d="${d}" fill="none" ${attrs}/>`);
    }

    circle(cx: number, cy: number, r: number, attrs: string): void {
        this.parts.push(`<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${r}" ${attrs}/>`);
    }

    cross(cx: number, cy: number, arm: number, attrs: string): void {
        this.line(cx - arm, cy - arm, cx + arm, cy + arm, attrs);
        this.line(cx - arm, cy + arm, cx + arm, cy - arm, attrs);
    }

    toString(): string {
        return this.parts.join("\n") + "\n</svg>\n";
    }
}

export interface Frame {
    x: LinearScale;
    y: LinearScale;
}

/** Draw a plot frame with ticks and labels; returns the scales. */
export function drawFrame(doc: SvgDoc, box: { left: number; top: number; width: number; height: number },
                          xDomain: Extent, yDomain: Extent,
                          xLabel: string, yLabel: string): Frame {
    const x = new LinearScale(xDomain, [box.left, box.left + box.width]);
    const y = new LinearScale(yDomain, [box.top + box.height, box.top]);
    const axisStyle = 'stroke="#333" stroke-width="1"';
    doc.line(box.left, box.top + box.height, box.left + box.width, box.top + box.height, axisStyle);
    doc.line(box.left, box.top, box.left, box.top + box.height, axisStyle);
    for (const tv of x.ticks()) {
        const px = x.map(tv);
        doc.line(px, box.top + box.height, px, box.top + box.height + 4, axisStyle);
        doc.text(px, box.top + box.height + 16, fmt(tv, 4),
                 'text-anchor="middle" font-size="10" fill="#333"');
    }
    for (const tv of y.ticks()) {
        const py = y.map(tv);
        doc.line(box.left - 4, py, box.left, py, axisStyle);
        doc.text(box.left - 7, py + 3, fmt(tv, 4),
                 'text-anchor="end" font-size="10" fill="#333"');
    }
    doc.text(box.left + box.width / 2, box.top + box.height + 32, xLabel,
             'text-anchor="middle" font-size="12" fill="#111"');
    doc.text(box.left - 44, box.top - 8, yLabel,
             'text-anchor="start" font-size="12" fill="#111"');
    return { x, y };
}

export const BODY_COLORS = ["#1f77b4", "#d62728", "#2ca02c"];
