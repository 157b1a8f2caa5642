#!/usr/bin/env node
/**
 * make-all-figures --in <csv dir> --out <figure dir>
 *
 * Regenerates the whole figure set from a directory of lab CSVs with
 * canonical names (see REQUIRED_INPUTS). Single figures come straight
 * from the figure kinds; the ladder and correspondence figures are
 * composed from several inputs.
 */

import { existsSync } from "node:fs";
import { join } from "node:path";
import { pathToFileURL } from "node:url";

import { EmptyData, Grid, SchemaError, readCriticalRate, readGrid, readLineCuts, readSpectrum } from "./csv.js";
import { CUT_COLORS } from "./colors.js";
import {
    branchesPanels, gapcurvePanel, heatmapPanel, linecutsPanel,
    stampInputs, writeFigure,
} from "./figures.js";
import { Panel, frame, legendSwatch, polyline } from "./svg.js";

const PROG = "make-all-figures";

export const REQUIRED_INPUTS = [
    "spectrum_vs_gamma.csv",
    "spectrum_theta0.csv",
    "spectrum_theta45.csv",
    "transmission.csv",
    "line_cut.csv",
    "phase_theta0.csv",
    "phase_theta45.csv",
    "phase_theta90.csv",
    "phase_plane.csv",
    "gap_map.csv",
    "critical_gamma.csv",
] as const;

export const FIGURE_FILES = [
    "fig2_branches_vs_loss.svg",
    "fig3_level_attraction.svg",
    "fig4_transmission.svg",
    "fig5_real_phase_spectrum.svg",
    "fig6_transition_ladder.svg",
    "fig7_gap_curve.svg",
    "fig8_phase_correspondence.svg",
] as const;

/** Count classification changes along each constant-y row of the grid. */
export function transitionCounts(grid: Grid): { y: number[]; counts: number[] } {
    const counts: number[] = [];
    for (let iy = 0; iy < grid.ys.length; iy++) {
        const row = grid.cells[iy] as (number | string)[];
        let changes = 0;
        for (let ix = 1; ix < row.length; ix++) {
            if (row[ix] !== row[ix - 1]) changes++;
        }
        counts.push(changes);
    }
    return { y: grid.ys, counts };
}

function ladderPanel(grids: { label: string; grid: Grid }[]): Panel {
    let maxCount = 0;
    let gammaLo = Infinity;
    let gammaHi = -Infinity;
    const curves = grids.map(({ label, grid }) => {
        const { y, counts } = transitionCounts(grid);
        maxCount = Math.max(maxCount, ...counts);
        gammaLo = Math.min(gammaLo, y[0] as number);
        gammaHi = Math.max(gammaHi, y[y.length - 1] as number);
        return { label, y, counts };
    });
    const f = frame({
        width: 520, height: 300,
        xDomain: [gammaLo, gammaHi],
        yDomain: [-0.3, maxCount + 0.7],
        xLabel: "gamma / g",
        yLabel: "real/complex transitions",
        title: "transitions along the magnon sweep",
    });
    curves.forEach((curve, i) => {
        const color = CUT_COLORS[i % CUT_COLORS.length] as string;
        f.parts.push(polyline(curve.y, curve.counts, f.x, f.y, color));
        f.parts.push(legendSwatch(
            f.plot.left + 10 + i * 120, f.plot.top + 14, color, curve.label));
    });
    return { width: 520, height: 300, body: f.parts.join("") };
}

export function makeAllFigures(inDir: string, outDir: string): string[] {
    for (const name of REQUIRED_INPUTS) {
        if (!existsSync(join(inDir, name))) {
            throw new SchemaError(`missing input CSV '${name}' in ${inDir}`);
        }
    }
    const path = (name: string) => join(inDir, name);
    const written: string[] = [];
    const emit = (name: string, panels: Panel[], inputNames: string[], layout: "row" | "column" = "column") => {
        const { stamps } = stampInputs(inputNames.map(path));
        const outPath = join(outDir, name);
        writeFigure(outPath, panels, stamps, layout);
        written.push(outPath);
    };
    const read = (name: string) => stampInputs([path(name)]).texts[0] as string;

    // collapse of the real spectrum with growing loss, critical rate marked
    const critical = readCriticalRate(read("critical_gamma.csv"));
    emit("fig2_branches_vs_loss.svg",
        branchesPanels(readSpectrum(read("spectrum_vs_gamma.csv")), {
            xLabel: "gamma / g",
            title: "eigenvalues vs loss rate",
            marker: { x: critical.p, label: `P = ${Number(critical.p.toPrecision(4))}` },
        }),
        ["spectrum_vs_gamma.csv", "critical_gamma.csv"]);

    // level attraction at theta = 0
    emit("fig3_level_attraction.svg",
        branchesPanels(readSpectrum(read("spectrum_theta0.csv")), {
            xLabel: "omega_m / g",
            title: "magnon sweep, dissipative coupling",
        }),
        ["spectrum_theta0.csv"]);

    // transmission map over the cuts that slice it
    emit("fig4_transmission.svg",
        [
            heatmapPanel(readGrid(read("transmission.csv"), ["transmission"]), {
                xLabel: "omega / g", yLabel: "omega_m / g", title: "|S21|",
            }),
            linecutsPanel(readLineCuts(read("line_cut.csv"))),
        ],
        ["transmission.csv", "line_cut.csv"]);

    // all-real spectrum at theta = 45 deg
    emit("fig5_real_phase_spectrum.svg",
        branchesPanels(readSpectrum(read("spectrum_theta45.csv")), {
            xLabel: "omega_m / g",
            title: "magnon sweep, mixed coupling",
        }),
        ["spectrum_theta45.csv"]);

    // transition-count ladder from three phase grids
    emit("fig6_transition_ladder.svg",
        [ladderPanel([
            { label: "theta = 0", grid: readGrid(read("phase_theta0.csv"), ["phase-diagram"]) },
            { label: "theta = 45 deg", grid: readGrid(read("phase_theta45.csv"), ["phase-diagram"]) },
            { label: "theta = 90 deg", grid: readGrid(read("phase_theta90.csv"), ["phase-diagram"]) },
        ])],
        ["phase_theta0.csv", "phase_theta45.csv", "phase_theta90.csv"]);

    // resonant gap law
    emit("fig7_gap_curve.svg",
        [gapcurvePanel(readGrid(read("gap_map.csv"), ["gap-map"]), {
            xLabel: "theta (rad)",
        })],
        ["gap_map.csv"]);

    // real phase vs gap magnitude over the same plane
    emit("fig8_phase_correspondence.svg",
        [
            heatmapPanel(readGrid(read("phase_plane.csv"), ["phase-diagram"]), {
                xLabel: "theta (rad)", yLabel: "gamma / g", title: "classification",
            }),
            heatmapPanel(readGrid(read("gap_map.csv"), ["gap-map"]), {
                xLabel: "theta (rad)", yLabel: "gamma / g", title: "inner gap",
            }),
        ],
        ["phase_plane.csv", "gap_map.csv"], "row");

    return written;
}

export function main(argv: string[]): number {
    let inDir: string | undefined;
    let outDir: string | undefined;
    for (let i = 0; i < argv.length; i += 2) {
        const flag = argv[i] as string;
        const value = argv[i + 1];
        if (value === undefined) {
            process.stderr.write(`${PROG}: flag ${flag} needs a value\n`);
            return 2;
        }
        if (flag === "--in") inDir = value;
        else if (flag === "--out") outDir = value;
        else {
            process.stderr.write(`${PROG}: unknown flag '${flag}'\n`);
            return 2;
        }
    }
    if (!inDir || !outDir) {
        process.stderr.write(`${PROG}: usage: ${PROG} --in <csv dir> --out <figure dir>\n`);
        return 2;
    }
    try {
        const written = makeAllFigures(inDir, outDir);
        for (const file of written) {
            process.stdout.write(`wrote ${file}\n`);
        }
    } catch (err) {
        if (err instanceof SchemaError || err instanceof EmptyData) {
            process.stderr.write(`${PROG}: ${err.message}\n`);
            return 1;
        }
        throw err;
    }
    return 0;
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
    process.exit(main(process.argv.slice(2)));
}
