#!/usr/bin/env node
/**
 * plot <kind> <in.csv> <out.svg>
 *
 * kinds: orbit | diagnostics | scan. A JSON summary goes to stdout; schema
 * problems exit 2, bad usage exits 1.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { SchemaMismatch, parseScan, parseTrajectory } from "./csv.js";
import { plotDiagnostics, plotOrbit, plotScan } from "./plots.js";

export function run(argv: string[]): number {
    if (argv.length !== 3) {
        process.stderr.write("usage: plot <orbit|diagnostics|scan> <in.csv> <out.svg>\n");
        return 1;
    }
    const [kind, input, output] = argv;
    let text: string;
    try {
        text = readFileSync(input, "utf8");
    } catch (err) {
        process.stderr.write(`error: cannot read ${input}: ${String(err)}\n`);
        return 1;
    }
    try {
        let svg: string;
        let summary: Record<string, unknown>;
        if (kind === "orbit") {
            const report = plotOrbit(parseTrajectory(text));
            svg = report.svg;
            summary = { kind, hausdorff: report.hausdorff,
                        events: report.events.length };
        } else if (kind === "diagnostics") {
            svg = plotDiagnostics(parseTrajectory(text));
            summary = { kind };
        } else if (kind === "scan") {
            const plot = plotScan(parseScan(text));
            svg = plot.svg;
            summary = { kind, minima: plot.minima.map((m) => m.theta) };
        } else {
            process.stderr.write(`error: unknown plot kind ${JSON.stringify(kind)}\n`);
            return 1;
        }
        writeFileSync(output, svg);
        summary.output = output;
        process.stdout.write(JSON.stringify(summary) + "\n");
        return 0;
    } catch (err) {
        if (err instanceof SchemaMismatch) {
            process.stderr.write(`schema mismatch: ${err.message}\n`);
            return 2;
        }
        throw err;
    }
}

import { fileURLToPath } from "node:url";

if (process.argv[1] && fileURLToPath(import.meta.url) === process.argv[1]) {
    process.exit(run(process.argv.slice(2)));
}
