/**
 * Minimal SVG assembly: no drawing dependency, figures are built from
 * rect/line/polyline/text primitives and composed from panels.
 *
 * Every document embeds a sha256 of each input CSV in a <metadata>
 * block, so a figure can always be traced back to the exact bytes it
 * was rendered from.
 */

import { createHash } from "node:crypto";

export function sha256Hex(data: string | Buffer): string {
    return createHash("sha256").update(data).digest("hex");
}

export function escapeXml(text: string): string {
    return text
        .replace(/&/g, "&amp;")
        .replace(/</g, "&lt;")
        .replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;");
}

function fmt(value: number): string {
    // enough digits for crisp geometry, short enough to keep files small
    return Number(value.toFixed(2)).toString();
}

export interface InputStamp {
    path: string;
    sha256: string;
}

export interface Panel {
    width: number;
    height: number;
    body: string;
}

export function svgDocument(panels: Panel[], inputs: InputStamp[], layout: "row" | "column" = "column"): string {
    const gap = 16;
    let width = 0;
    let height = 0;
    const parts: string[] = [];
    let offset = 0;
    for (const panel of panels) {
        if (layout === "column") {
            parts.push(`<g transform="translate(0,${fmt(offset)})">${panel.body}</g>`);
            offset += panel.height + gap;
            width = Math.max(width, panel.width);
            height = offset - gap;
        } else {
            parts.push(`<g transform="translate(${fmt(offset)},0)">${panel.body}</g>`);
            offset += panel.width + gap;
            height = Math.max(height, panel.height);
            width = offset - gap;
        }
    }
    const meta = escapeXml(JSON.stringify({ inputs }));
    return [
        `<svg xmlns="http://www.w3.org/2000/svg" width="${fmt(width)}" height="${fmt(height)}" viewBox="0 0 ${fmt(width)} ${fmt(height)}">`,
        `<metadata>${meta}</metadata>`,
        `<rect x="0" y="0" width="${fmt(width)}" height="${fmt(height)}" fill="#ffffff"/>`,
        ...parts,
        `</svg>`,
        ``,
    ].join("\n");
}

// ── scales and ticks ─────────────────────────────────────────────────────

export interface Scale {
    (value: number): number;
    domain: [number, number];
    range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
    const [d0, d1] = domain;
    const [r0, r1] = range;
    const span = d1 - d0 === 0 ? 1 : d1 - d0;
    const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
    scale.domain = domain;
    scale.range = range;
    return scale;
}

/** Round tick positions covering the domain, at most `count` of them. */
export function niceTicks(lo: number, hi: number, count: number): number[] {
    if (hi <= lo) return [lo];
    const rawStep = (hi - lo) / Math.max(1, count);
    const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
    let step = power;
    for (const mult of [1, 2, 5, 10]) {
        if (power * mult >= rawStep) {
            step = power * mult;
            break;
        }
    }
    const ticks: number[] = [];
    const first = Math.ceil(lo / step) * step;
    for (let t = first; t <= hi + step * 1e-9; t += step) {
        ticks.push(Math.abs(t) < step * 1e-9 ? 0 : t);
    }
    return ticks;
}

function tickLabel(value: number): string {
    const rounded = Number(value.toPrecision(6));
    return Math.abs(rounded) >= 1e5 || (rounded !== 0 && Math.abs(rounded) < 1e-3)
        ? rounded.toExponential(1)
        : rounded.toString();
}

// ── panel frame ──────────────────────────────────────────────────────────

export interface FrameOptions {
    width: number;
    height: number;
    xDomain: [number, number];
    yDomain: [number, number];
    xLabel: string;
    yLabel: string;
    title?: string;
}

export interface Frame {
    x: Scale;
    y: Scale;
    /** plot-area rectangle in panel coordinates */
    plot: { left: number; top: number; right: number; bottom: number };
    parts: string[];
}

export const MARGIN = { left: 58, right: 16, top: 26, bottom: 42 };

/** Axes, ticks and labels; curves are appended to `parts` afterwards. */
export function frame(options: FrameOptions): Frame {
    const left = MARGIN.left;
    const top = MARGIN.top;
    const right = options.width - MARGIN.right;
    const bottom = options.height - MARGIN.bottom;
    const x = linearScale(options.xDomain, [left, right]);
    const y = linearScale(options.yDomain, [bottom, top]);
    const parts: string[] = [];
    parts.push(`<rect x="${fmt(left)}" y="${fmt(top)}" width="${fmt(right - left)}" height="${fmt(bottom - top)}" fill="none" stroke="#444444" stroke-width="1"/>`);
    for (const t of niceTicks(options.xDomain[0], options.xDomain[1], 7)) {
        const px = x(t);
        parts.push(`<line x1="${fmt(px)}" y1="${fmt(bottom)}" x2="${fmt(px)}" y2="${fmt(bottom + 4)}" stroke="#444444" stroke-width="1"/>`);
        parts.push(`<text x="${fmt(px)}" y="${fmt(bottom + 17)}" font-size="11" text-anchor="middle" fill="#222222">${escapeXml(tickLabel(t))}</text>`);
    }
    for (const t of niceTicks(options.yDomain[0], options.yDomain[1], 6)) {
        const py = y(t);
        parts.push(`<line x1="${fmt(left - 4)}" y1="${fmt(py)}" x2="${fmt(left)}" y2="${fmt(py)}" stroke="#444444" stroke-width="1"/>`);
        parts.push(`<text x="${fmt(left - 7)}" y="${fmt(py + 4)}" font-size="11" text-anchor="end" fill="#222222">${escapeXml(tickLabel(t))}</text>`);
    }
    parts.push(`<text x="${fmt((left + right) / 2)}" y="${fmt(options.height - 10)}" font-size="12" text-anchor="middle" fill="#222222">${escapeXml(options.xLabel)}</text>`);
    parts.push(`<text x="14" y="${fmt((top + bottom) / 2)}" font-size="12" text-anchor="middle" fill="#222222" transform="rotate(-90 14 ${fmt((top + bottom) / 2)})">${escapeXml(options.yLabel)}</text>`);
    if (options.title) {
        parts.push(`<text x="${fmt((left + right) / 2)}" y="16" font-size="13" text-anchor="middle" fill="#111111">${escapeXml(options.title)}</text>`);
    }
    return { x, y, plot: { left, top, right, bottom }, parts };
}

export function polylinePath(xs: number[], ys: number[], x: Scale, y: Scale): string {
    const points: string[] = [];
    for (let i = 0; i < xs.length; i++) {
        points.push(`${fmt(x(xs[i] as number))},${fmt(y(ys[i] as number))}`);
    }
    return points.join(" ");
}

export function polyline(xs: number[], ys: number[], x: Scale, y: Scale, stroke: string, width = 1.5): string {
    return `<polyline points="${polylinePath(xs, ys, x, y)}" fill="none" stroke="${stroke}" stroke-width="${width}"/>`;
}

export function cellRect(px: number, py: number, w: number, h: number, fill: string): string {
    // tiny overlap hides antialiasing seams between grid cells
    return `<rect x="${fmt(px)}" y="${fmt(py - h)}" width="${fmt(w + 0.25)}" height="${fmt(h + 0.25)}" fill="${fill}"/>`;
}

export function legendSwatch(px: number, py: number, color: string, label: string): string {
    return `<rect x="${fmt(px)}" y="${fmt(py - 8)}" width="14" height="8" fill="${color}"/>` +
        `<text x="${fmt(px + 18)}" y="${fmt(py)}" font-size="11" fill="#222222">${escapeXml(label)}</text>`;
}
