/**
 * Parsers for the two CSV contracts produced by the lab:
 *
 *  - trajectory: header `t,x1,y1,...,vy3,I,K,V,E,L` (18 columns), one row
 *    per accepted integrator step, collision events as footer comments
 *    `# collision pair=(i,j) t=<...>`;
 *  - theta scan: header `theta,period,residual`, sentinel rows carry
 *    `inf`/`nan` for infeasible launch angles.
 *
 * Numbers are plain decimal; `inf`, `-inf` and `nan` are accepted where
 * the producer writes non-finite sentinels.
 */

export class SchemaMismatch extends Error {
    constructor(message: string) {
        super(message);
        this.name = "SchemaMismatch";
    }
}

export const TRAJECTORY_HEADER =
    "t,x1,y1,x2,y2,x3,y3,vx1,vy1,vx2,vy2,vx3,vy3,I,K,V,E,L";
export const SCAN_HEADER = "theta,period,residual";

export interface TrajectoryRow {
    t: number;
    /** positions[i] = [x, y] of body i (0-based) */
    positions: [number, number][];
    velocities: [number, number][];
    I: number;
    K: number;
    V: number;
    E: number;
    L: number;
}

export interface CollisionEvent {
    pair: [number, number]; // 1-based body indices
    time: number;
}

export interface Trajectory {
    rows: TrajectoryRow[];
    events: CollisionEvent[];
}

export interface ScanRow {
    theta: number;
    period: number;  // NaN when the scan point found no candidate
    residual: number; // Infinity marks an infeasible point
}

function parseNumber(text: string, where: string): number {
    const s = text.trim();
    if (s === "inf") return Infinity;
    if (s === "-inf") return -Infinity;
    if (s === "nan" || s === "-nan") return NaN;
    if (s === "") throw new SchemaMismatch(`empty numeric field in ${where}`);
    const v = Number(s);
    if (Number.isNaN(v)) {
        throw new SchemaMismatch(`non-numeric field ${JSON.stringify(s)} in ${where}`);
    }
    return v;
}

function splitLines(text: string): string[] {
    return text.split("\n").map((l) => l.trimEnd()).filter((l) => l.length > 0);
}

const EVENT_RE = /^#\s*collision\s+pair=\((\d+),(\d+)\)\s+t=([^\s]+)$/;

export function parseTrajectory(text: string): Trajectory {
    const lines = splitLines(text);
    if (lines.length === 0) throw new SchemaMismatch("empty file");
    if (lines[0] !== TRAJECTORY_HEADER) {
        throw new SchemaMismatch(
            `trajectory header mismatch: got ${JSON.stringify(lines[0].slice(0, 60))}`);
    }
    const rows: TrajectoryRow[] = [];
    const events: CollisionEvent[] = [];
    for (let i = 1; i < lines.length; i++) {
        const line = lines[i];
        if (line.startsWith("#")) {
            const m = EVENT_RE.exec(line);
            if (m) {
                events.push({
                    pair: [parseInt(m[1], 10), parseInt(m[2], 10)],
                    time: parseNumber(m[3], `event line ${i + 1}`),
                });
            }
            continue; // other comments are tolerated
        }
        const parts = line.split(",");
        if (parts.length !== 18) {
            throw new SchemaMismatch(
                `row ${i + 1}: expected 18 columns, got ${parts.length}`);
        }
        const v = parts.map((p, k) => parseNumber(p, `row ${i + 1} col ${k + 1}`));
        rows.push({
            t: v[0],
            positions: [[v[1], v[2]], [v[3], v[4]], [v[5], v[6]]],
            velocities: [[v[7], v[8]], [v[9], v[10]], [v[11], v[12]]],
            I: v[13], K: v[14], V: v[15], E: v[16], L: v[17],
        });
    }
    if (rows.length === 0) throw new SchemaMismatch("trajectory has no data rows");
    return { rows, events };
}

export function parseScan(text: string): ScanRow[] {
    const lines = splitLines(text);
    if (lines.length === 0) throw new SchemaMismatch("empty file");
    if (lines[0] !== SCAN_HEADER) {
        throw new SchemaMismatch(
            `scan header mismatch: got ${JSON.stringify(lines[0].slice(0, 40))}`);
    }
    const rows: ScanRow[] = [];
    for (let i = 1; i < lines.length; i++) {
        if (lines[i].startsWith("#")) continue;
        const parts = lines[i].split(",");
        if (parts.length !== 3) {
            throw new SchemaMismatch(`row ${i + 1}: expected 3 columns, got ${parts.length}`);
        }
        rows.push({
            theta: parseNumber(parts[0], `row ${i + 1}`),
            period: parseNumber(parts[1], `row ${i + 1}`),
            residual: parseNumber(parts[2], `row ${i + 1}`),
        });
    }
    if (rows.length === 0) throw new SchemaMismatch("scan has no data rows");
    return rows;
}

/** Trace of one body as a point list. */
export function bodyTrace(traj: Trajectory, body: 0 | 1 | 2): [number, number][] {
    return traj.rows.map((r) => r.positions[body]);
}
