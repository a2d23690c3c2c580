/**
 * The three plot kinds over the lab's CSV contracts.
 *
 * `plotOrbit` also measures how far the three traces are from lying on a
 * single curve (pairwise Hausdorff distances), embeds the numbers in the
 * SVG and returns them, since coinciding traces are the signature of a
 * choreography.
 */

import { bodyTrace, CollisionEvent, ScanRow, Trajectory } from "./csv.js";
import { Point, hausdorff } from "./geometry.js";
import { BODY_COLORS, SvgDoc, drawFrame, extentOf, fmt } from "./svg.js";

export interface OrbitReport {
    svg: string;
    hausdorff: { h12: number; h13: number; h23: number; max: number };
    events: CollisionEvent[];
}

function eventPosition(traj: Trajectory, ev: CollisionEvent): Point {
    // midpoint of the colliding pair at the row nearest the event time
    let best = traj.rows[0];
    let bestDt = Infinity;
    for (const row of traj.rows) {
        const dt = Math.abs(row.t - ev.time);
        if (dt < bestDt) {
            bestDt = dt;
            best = row;
        }
    }
    const a = best.positions[ev.pair[0] - 1];
    const b = best.positions[ev.pair[1] - 1];
    return [(a[0] + b[0]) / 2, (a[1] + b[1]) / 2];
}

export function plotOrbit(traj: Trajectory, title = "orbit traces"): OrbitReport {
    const traces: [Point[], Point[], Point[]] = [
        bodyTrace(traj, 0), bodyTrace(traj, 1), bodyTrace(traj, 2)];
    const h12 = hausdorff(traces[0], traces[1]);
    const h13 = hausdorff(traces[0], traces[2]);
    const h23 = hausdorff(traces[1], traces[2]);
    const hMax = Math.max(h12, h13, h23);

    const xs = traces.flat().map((p) => p[0]);
    const ys = traces.flat().map((p) => p[1]);
    // keep x/y isotropic so orbit shapes are not distorted
    const ex = extentOf(xs);
    const ey = extentOf(ys);
    const span = Math.max(ex.max - ex.min, ey.max - ey.min);
    const cx = (ex.min + ex.max) / 2;
    const cy = (ey.min + ey.max) / 2;
    const xDomain = { min: cx - span / 2, max: cx + span / 2 };
    const yDomain = { min: cy - span / 2, max: cy + span / 2 };

    const doc = new SvgDoc(720, 720, title);
    const frame = drawFrame(doc, { left: 70, top: 40, width: 600, height: 600 },
                            xDomain, yDomain, "x", "y");
    traces.forEach((trace, i) => {
        doc.path(trace.map((p) => [frame.x.map(p[0]), frame.y.map(p[1])] as const),
                 `stroke="${BODY_COLORS[i]}" stroke-width="1.1" stroke-opacity="0.85" class="body-trace"`);
    });
    // start markers
    traces.forEach((trace, i) => {
        doc.circle(frame.x.map(trace[0][0]), frame.y.map(trace[0][1]), 3.5,
                   `fill="${BODY_COLORS[i]}"`);
    });
    for (const ev of traj.events) {
        const [px, py] = eventPosition(traj, ev);
        doc.cross(frame.x.map(px), frame.y.map(py), 6,
                  'stroke="#000" stroke-width="1.6" class="collision-marker"');
        doc.text(frame.x.map(px) + 9, frame.y.map(py) - 6,
                 `collision (${ev.pair[0]},${ev.pair[1]}) t=${fmt(ev.time, 6)}`,
                 'font-size="10" fill="#000"');
    }
    traces.forEach((_, i) => {
        doc.circle(90, 60 + 16 * i, 4, `fill="${BODY_COLORS[i]}"`);
        doc.text(100, 64 + 16 * i, `body ${i + 1}`, 'font-size="11" fill="#111"');
    });
    doc.text(90, 60 + 16 * 3 + 4,
             `trace Hausdorff max = ${fmt(hMax, 3)}`, 'font-size="11" fill="#111"');
    doc.raw(`<desc>hausdorff h12=${fmt(h12, 6)} h13=${fmt(h13, 6)} h23=${fmt(h23, 6)}</desc>`);
    return { svg: doc.toString(), hausdorff: { h12, h13, h23, max: hMax },
             events: traj.events };
}

export function plotDiagnostics(traj: Trajectory, title = "diagnostics"): string {
    const doc = new SvgDoc(760, 720, title);
    const ts = traj.rows.map((r) => r.t);
    const tDomain = extentOf(ts, 0.01);
    const panels: { label: string; values: number[]; reference?: number }[] = [
        { label: "I(t)", values: traj.rows.map((r) => r.I), reference: traj.rows[0].I },
        { label: "E(t)", values: traj.rows.map((r) => r.E) },
        { label: "L(t)", values: traj.rows.map((r) => r.L) },
    ];
    panels.forEach((panel, k) => {
        const box = { left: 90, top: 40 + 220 * k, width: 620, height: 170 };
        const frame = drawFrame(doc, box, tDomain, extentOf(panel.values, 0.1),
                                k === 2 ? "t" : "", panel.label);
        if (panel.reference !== undefined) {
            const py = frame.y.map(panel.reference);
            doc.line(box.left, py, box.left + box.width, py,
                     'stroke="#999" stroke-width="1" stroke-dasharray="5,4" class="reference-line"');
        }
        doc.path(traj.rows.map((r, i) =>
                     [frame.x.map(r.t), frame.y.map(panel.values[i])] as const),
                 'stroke="#1f77b4" stroke-width="1.2" class="diagnostic-series"');
    });
    return doc.toString();
}

export interface ScanPlot {
    svg: string;
    minima: ScanRow[];
}

/** Strict interior local minima among finite residuals, kept only when they
 * dip below the finite median (a flat or monotone scan annotates nothing). */
export function detectMinima(rows: ScanRow[]): ScanRow[] {
    const finite = rows.filter((r) => Number.isFinite(r.residual));
    if (finite.length < 3) return [];
    const sorted = [...finite].map((r) => r.residual).sort((a, b) => a - b);
    const median = sorted[Math.floor(sorted.length / 2)];
    const out: ScanRow[] = [];
    for (let i = 1; i < rows.length - 1; i++) {
        const r = rows[i].residual;
        if (!Number.isFinite(r)) continue;
        const left = rows[i - 1].residual;
        const right = rows[i + 1].residual;
        if (!Number.isFinite(left) || !Number.isFinite(right)) continue;
        if (r < left && r < right && r < median) out.push(rows[i]);
    }
    return out;
}

export function plotScan(rows: ScanRow[], title = "choreography residual scan"): ScanPlot {
    const finite = rows.filter((r) => Number.isFinite(r.residual) && r.residual > 0);
    const useLog = finite.length > 0 && finite.every((r) => r.residual > 0);
    const value = (r: number) => (useLog ? Math.log10(r) : r);
    const doc = new SvgDoc(760, 480, title);
    const yValues = finite.map((r) => value(r.residual));
    const frame = drawFrame(doc, { left: 90, top: 40, width: 620, height: 360 },
                            extentOf(rows.map((r) => r.theta), 0.02),
                            yValues.length ? extentOf(yValues, 0.08) : { min: 0, max: 1 },
                            "theta", useLog ? "log10 residual" : "residual");
    // sentinel rows become gaps
    doc.path(rows.map((r) => Number.isFinite(r.residual)
                 ? [frame.x.map(r.theta), frame.y.map(value(r.residual))] as const
                 : null),
             'stroke="#1f77b4" stroke-width="1.4" class="scan-curve"');
    const minima = detectMinima(rows);
    for (const m of minima) {
        const px = frame.x.map(m.theta);
        const py = frame.y.map(value(m.residual));
        doc.circle(px, py, 4, 'fill="none" stroke="#d62728" stroke-width="1.6" class="scan-minimum"');
        doc.text(px, py - 9, `theta=${fmt(m.theta, 4)}`,
                 'text-anchor="middle" font-size="10" fill="#d62728"');
    }
    return { svg: doc.toString(), minima };
}
