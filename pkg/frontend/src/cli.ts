#!/usr/bin/env node
/**
 * plot_figures <kind> --in <csv> --out <img> [--title T] [--xlabel X]
 *                     [--ylabel Y] [--gamma G]
 *
 * Renders one figure of the given kind from one CSV produced by the
 * lab CLI. Exit codes: 0 success, 1 schema or data failure, 2 usage.
 */

import { pathToFileURL } from "node:url";

import { EmptyData, SchemaError } from "./csv.js";
import { FIGURE_KINDS, FigureKind, FigureSpec, render } from "./figures.js";

const PROG = "plot_figures";

class UsageError extends Error {}

export function parseArgs(argv: string[]): FigureSpec {
    if (argv.length === 0) {
        throw new UsageError(`usage: ${PROG} <${FIGURE_KINDS.join("|")}> --in <csv> --out <img>`);
    }
    const kind = argv[0] as string;
    if (!(FIGURE_KINDS as string[]).includes(kind)) {
        throw new UsageError(`unknown kind '${kind}', expected one of ${FIGURE_KINDS.join(", ")}`);
    }
    let input: string | undefined;
    let out: string | undefined;
    let title: string | undefined;
    let xLabel: string | undefined;
    let yLabel: string | undefined;
    let gamma: number | undefined;
    for (let i = 1; i < argv.length; i += 2) {
        const flag = argv[i] as string;
        const value = argv[i + 1];
        if (value === undefined) {
            throw new UsageError(`flag ${flag} needs a value`);
        }
        switch (flag) {
            case "--in": input = value; break;
            case "--out": out = value; break;
            case "--title": title = value; break;
            case "--xlabel": xLabel = value; break;
            case "--ylabel": yLabel = value; break;
            case "--gamma": {
                gamma = Number(value);
                if (!Number.isFinite(gamma)) {
                    throw new UsageError(`--gamma needs a number, got '${value}'`);
                }
                break;
            }
            default:
                throw new UsageError(`unknown flag '${flag}'`);
        }
    }
    if (!input) throw new UsageError("--in is required");
    if (!out) throw new UsageError("--out is required");
    return { kind: kind as FigureKind, inputs: [input], outPath: out, title, xLabel, yLabel, gamma };
}

export function main(argv: string[]): number {
    try {
        render(parseArgs(argv));
    } catch (err) {
        if (err instanceof UsageError) {
            process.stderr.write(`${PROG}: ${err.message}\n`);
            return 2;
        }
        if (err instanceof SchemaError || err instanceof EmptyData) {
            process.stderr.write(`${PROG}: ${err.message}\n`);
            return 1;
        }
        if (err instanceof Error && (err as NodeJS.ErrnoException).code === "ENOENT") {
            process.stderr.write(`${PROG}: no such file: ${(err as NodeJS.ErrnoException).path}\n`);
            return 1;
        }
        throw err;
    }
    return 0;
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
    process.exit(main(process.argv.slice(2)));
}
