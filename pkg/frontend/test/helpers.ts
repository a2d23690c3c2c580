import { TRAJECTORY_HEADER } from "../src/csv.js";

/** Synthetic choreography: three bodies riding one circle, phase-shifted. */
export function circleTrajectoryCsv(samples = 600, radius = 1.0): string {
    const lines = [TRAJECTORY_HEADER];
    const T = 2 * Math.PI;
    for (let k = 0; k < samples; k++) {
        const t = (T * k) / (samples - 1);
        const row: number[] = [t];
        const positions: number[] = [];
        const velocities: number[] = [];
        for (let i = 0; i < 3; i++) {
            const phase = t + (2 * Math.PI * i) / 3;
            positions.push(radius * Math.cos(phase), radius * Math.sin(phase));
            velocities.push(-radius * Math.sin(phase), radius * Math.cos(phase));
        }
        row.push(...positions, ...velocities);
        const I = 1.5 * radius * radius;
        const K = 1.5 * radius * radius;
        row.push(I, K, -K, 0, 3 * radius * radius); // I K V E L
        lines.push(row.map((v) => v.toPrecision(17)).join(","));
    }
    return lines.join("\n") + "\n";
}

export function scanCsv(rows: [number, number | null, number][]): string {
    const fmt = (v: number | null) =>
        v === null ? "nan" : Number.isFinite(v) ? String(v) : v > 0 ? "inf" : "-inf";
    return ["theta,period,residual",
            ...rows.map(([t, p, r]) => `${t},${fmt(p)},${fmt(r)}`)].join("\n") + "\n";
}
