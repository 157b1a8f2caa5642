/**
 * Figure construction: one renderer per kind plus the composition
 * helpers the driver uses to build multi-panel figures.
 *
 * Kinds:
 *   branches  eigenvalue sweep CSV -> Re and Im panels vs the swept knob
 *   heatmap   grid CSV -> classification (two-color) or magnitude (ramp)
 *   linecuts  line-cut CSV -> one |S21| profile per detuning
 *   gapcurve  gap-map CSV -> inner gap vs theta at one loss rate
 */

import { readFileSync, writeFileSync, mkdirSync } from "node:fs";
import { dirname } from "node:path";

import {
    Grid, LineCuts, SpectrumData,
    readGrid, readLineCuts, readSpectrum,
} from "./csv.js";
import {
    BRANCH_COLORS, COMPLEX_WHITE, CUT_COLORS, REAL_GREEN, rampColor,
} from "./colors.js";
import {
    InputStamp, Panel, cellRect, escapeXml, frame, legendSwatch,
    linearScale, niceTicks, polyline, sha256Hex, svgDocument,
} from "./svg.js";

export type FigureKind = "branches" | "heatmap" | "linecuts" | "gapcurve";

export const FIGURE_KINDS: FigureKind[] = ["branches", "heatmap", "linecuts", "gapcurve"];

export interface FigureSpec {
    kind: FigureKind;
    /** input CSV paths; every kind reads exactly one */
    inputs: string[];
    outPath: string;
    title?: string;
    xLabel?: string;
    yLabel?: string;
    /** gapcurve only: loss rate whose grid row is plotted (nearest row wins) */
    gamma?: number;
}

const PANEL_W = 520;
const PANEL_H = 300;

function domainOf(values: number[], pad = 0.05): [number, number] {
    let lo = Infinity;
    let hi = -Infinity;
    for (const v of values) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
    }
    if (!(lo < hi)) {
        hi = lo + 1;
    }
    const span = hi - lo;
    return [lo - span * pad, hi + span * pad];
}

// ── branches ─────────────────────────────────────────────────────────────

export interface BranchesOptions {
    xLabel?: string;
    title?: string;
    /** optional vertical marker, e.g. a critical rate */
    marker?: { x: number; label: string };
}

export function branchesPanels(data: SpectrumData, options: BranchesOptions = {}): Panel[] {
    const xLabel = options.xLabel ?? data.knob;
    const allX: number[] = [];
    const allRe: number[] = [];
    const allIm: number[] = [];
    for (const b of data.branches) {
        allX.push(...b.values);
        allRe.push(...b.re);
        allIm.push(...b.im);
    }
    const xDomain = domainOf(allX, 0);
    const panels: Panel[] = [];
    const specs = [
        { values: "re" as const, label: "Re omega / g", all: allRe, title: options.title },
        { values: "im" as const, label: "Im omega / g", all: allIm, title: undefined },
    ];
    for (const spec of specs) {
        const f = frame({
            width: PANEL_W, height: PANEL_H,
            xDomain, yDomain: domainOf(spec.all),
            xLabel, yLabel: spec.label, title: spec.title,
        });
        for (const b of data.branches) {
            const color = BRANCH_COLORS[b.branch % BRANCH_COLORS.length] as string;
            f.parts.push(polyline(b.values, spec.values === "re" ? b.re : b.im, f.x, f.y, color));
        }
        if (options.marker) {
            const px = f.x(options.marker.x);
            f.parts.push(`<line x1="${px.toFixed(2)}" y1="${f.plot.top}" x2="${px.toFixed(2)}" y2="${f.plot.bottom}" stroke="#555555" stroke-width="1" stroke-dasharray="5,4"/>`);
            f.parts.push(`<text x="${(px + 5).toFixed(2)}" y="${f.plot.top + 14}" font-size="11" fill="#555555">${escapeXml(options.marker.label)}</text>`);
        }
        panels.push({ width: PANEL_W, height: PANEL_H, body: f.parts.join("") });
    }
    return panels;
}

// ── heatmap ──────────────────────────────────────────────────────────────

export interface HeatmapOptions {
    xLabel?: string;
    yLabel?: string;
    title?: string;
}

export function heatmapPanel(grid: Grid, options: HeatmapOptions = {}): Panel {
    const classified = grid.schema === "phase-diagram";
    const width = PANEL_W + (classified ? 0 : 56);
    const f = frame({
        width, height: PANEL_H,
        xDomain: [grid.xs[0] as number, grid.xs[grid.xs.length - 1] as number],
        yDomain: [grid.ys[0] as number, grid.ys[grid.ys.length - 1] as number],
        xLabel: options.xLabel ?? grid.xName,
        yLabel: options.yLabel ?? grid.yName,
        title: options.title,
    });
    // cells are drawn centered on their grid coordinates
    const cw = (f.plot.right - f.plot.left) / grid.xs.length;
    const ch = (f.plot.bottom - f.plot.top) / grid.ys.length;
    let vmax = 0;
    if (!classified) {
        for (const row of grid.cells) {
            for (const v of row) {
                if ((v as number) > vmax) vmax = v as number;
            }
        }
        if (vmax === 0) vmax = 1;
    }
    const rects: string[] = [];
    for (let iy = 0; iy < grid.ys.length; iy++) {
        const row = grid.cells[iy] as (number | string)[];
        for (let ix = 0; ix < grid.xs.length; ix++) {
            const v = row[ix] as number | string;
            const fill = classified
                ? (v === "real" ? REAL_GREEN : COMPLEX_WHITE)
                : rampColor((v as number) / vmax);
            const px = f.plot.left + ix * cw;
            const py = f.plot.bottom - iy * ch;
            rects.push(cellRect(px, py, cw, ch, fill));
        }
    }
    // cells go under the frame so the border stays visible
    const body: string[] = [...rects, ...f.parts];
    if (classified) {
        body.push(legendSwatch(f.plot.right - 150, f.plot.top - 8, REAL_GREEN, "real"));
        body.push(legendSwatch(f.plot.right - 80, f.plot.top - 8, "#dddddd", "complex"));
    } else {
        // vertical colorbar with its own value axis
        const barLeft = f.plot.right + 14;
        const barWidth = 12;
        const steps = 48;
        const stepH = (f.plot.bottom - f.plot.top) / steps;
        for (let i = 0; i < steps; i++) {
            const t = (i + 0.5) / steps;
            const py = f.plot.bottom - i * stepH;
            body.push(cellRect(barLeft, py, barWidth, stepH, rampColor(t)));
        }
        body.push(`<rect x="${barLeft}" y="${f.plot.top}" width="${barWidth}" height="${(f.plot.bottom - f.plot.top).toFixed(2)}" fill="none" stroke="#444444" stroke-width="1"/>`);
        const scale = linearScale([0, vmax], [f.plot.bottom, f.plot.top]);
        for (const t of niceTicks(0, vmax, 5)) {
            const py = scale(t);
            body.push(`<line x1="${barLeft + barWidth}" y1="${py.toFixed(2)}" x2="${barLeft + barWidth + 3}" y2="${py.toFixed(2)}" stroke="#444444" stroke-width="1"/>`);
            body.push(`<text x="${barLeft + barWidth + 6}" y="${(py + 4).toFixed(2)}" font-size="10" fill="#222222">${escapeXml(Number(t.toPrecision(3)).toString())}</text>`);
        }
        body.push(`<text x="${barLeft + barWidth / 2}" y="${f.plot.top - 8}" font-size="11" text-anchor="middle" fill="#222222">${escapeXml(grid.valueName)}</text>`);
    }
    return { width, height: PANEL_H, body: body.join("") };
}

// ── line cuts ────────────────────────────────────────────────────────────

export interface LinecutsOptions {
    xLabel?: string;
    yLabel?: string;
    title?: string;
}

export function linecutsPanel(cuts: LineCuts, options: LinecutsOptions = {}): Panel {
    const allOmega: number[] = [];
    const allS21: number[] = [];
    for (const cut of cuts.cuts) {
        allOmega.push(...cut.omega);
        allS21.push(...cut.s21);
    }
    const f = frame({
        width: PANEL_W, height: PANEL_H,
        xDomain: domainOf(allOmega, 0),
        yDomain: domainOf(allS21),
        xLabel: options.xLabel ?? "omega / g",
        yLabel: options.yLabel ?? "|S21| (normalized)",
        title: options.title,
    });
    cuts.cuts.forEach((cut, i) => {
        const color = CUT_COLORS[i % CUT_COLORS.length] as string;
        f.parts.push(polyline(cut.omega, cut.s21, f.x, f.y, color));
        f.parts.push(legendSwatch(
            f.plot.left + 10 + i * 110, f.plot.top + 14, color,
            `delta = ${cut.delta}`));
    });
    return { width: PANEL_W, height: PANEL_H, body: f.parts.join("") };
}

// ── gap curve ────────────────────────────────────────────────────────────

export interface GapcurveOptions {
    gamma?: number;
    xLabel?: string;
    title?: string;
}

export function gapcurvePanel(grid: Grid, options: GapcurveOptions = {}): Panel {
    const target = options.gamma ?? 0.5;
    let best = 0;
    for (let iy = 1; iy < grid.ys.length; iy++) {
        if (Math.abs((grid.ys[iy] as number) - target) <
            Math.abs((grid.ys[best] as number) - target)) {
            best = iy;
        }
    }
    const gamma = grid.ys[best] as number;
    const gaps = (grid.cells[best] as number[]).slice();
    const f = frame({
        width: PANEL_W, height: PANEL_H,
        xDomain: [grid.xs[0] as number, grid.xs[grid.xs.length - 1] as number],
        yDomain: domainOf(gaps),
        xLabel: options.xLabel ?? "theta (rad)",
        yLabel: "inner gap / g",
        title: options.title ?? `gamma = ${Number(gamma.toPrecision(3))}`,
    });
    f.parts.push(polyline(grid.xs, gaps, f.x, f.y, "#1f77b4", 2));
    return { width: PANEL_W, height: PANEL_H, body: f.parts.join("") };
}

// ── render dispatch ──────────────────────────────────────────────────────

export function stampInputs(paths: string[]): { stamps: InputStamp[]; texts: string[] } {
    const stamps: InputStamp[] = [];
    const texts: string[] = [];
    for (const path of paths) {
        const bytes = readFileSync(path);
        stamps.push({ path, sha256: sha256Hex(bytes) });
        texts.push(bytes.toString("utf-8"));
    }
    return { stamps, texts };
}

export function writeFigure(outPath: string, panels: Panel[], stamps: InputStamp[], layout: "row" | "column" = "column"): void {
    mkdirSync(dirname(outPath), { recursive: true });
    writeFileSync(outPath, svgDocument(panels, stamps, layout), "utf-8");
}

/** Render one figure from its spec; throws SchemaError / EmptyData on bad input. */
export function render(spec: FigureSpec): void {
    if (spec.inputs.length !== 1) {
        throw new Error(`kind '${spec.kind}' takes exactly one input CSV`);
    }
    const { stamps, texts } = stampInputs(spec.inputs);
    const text = texts[0] as string;
    let panels: Panel[];
    switch (spec.kind) {
        case "branches":
            panels = branchesPanels(readSpectrum(text), {
                xLabel: spec.xLabel, title: spec.title,
            });
            break;
        case "heatmap":
            panels = [heatmapPanel(readGrid(text), {
                xLabel: spec.xLabel, yLabel: spec.yLabel, title: spec.title,
            })];
            break;
        case "linecuts":
            panels = [linecutsPanel(readLineCuts(text), {
                xLabel: spec.xLabel, yLabel: spec.yLabel, title: spec.title,
            })];
            break;
        case "gapcurve":
            panels = [gapcurvePanel(readGrid(text, ["gap-map"]), {
                gamma: spec.gamma, xLabel: spec.xLabel, title: spec.title,
            })];
            break;
    }
    writeFigure(spec.outPath, panels, stamps);
}
