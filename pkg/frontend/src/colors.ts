/**
 * Color tables for the figure set.
 *
 * Classification cells follow the two-color convention: green marks the
 * all-real phase, white the complex one. Continuous magnitudes use a
 * small hand-picked dark-to-bright ramp interpolated in RGB.
 */

export const REAL_GREEN = "#3fa34d";
export const COMPLEX_WHITE = "#ffffff";

/** branch line colors, one per eigenvalue branch */
export const BRANCH_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/** line-cut colors, cycling if there are more cuts than entries */
export const CUT_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd"];

/** dark blue -> teal -> yellow ramp for |S21| and gap magnitudes */
const RAMP: [number, number, number][] = [
    [13, 8, 135],
    [84, 2, 163],
    [139, 10, 165],
    [185, 50, 137],
    [219, 92, 104],
    [244, 136, 73],
    [254, 188, 43],
    [240, 249, 33],
];

function channel(value: number): string {
    return Math.round(value).toString(16).padStart(2, "0");
}

/** Map t in [0, 1] onto the magnitude ramp as a #rrggbb string. */
export function rampColor(t: number): string {
    const clamped = Math.min(1, Math.max(0, t));
    const pos = clamped * (RAMP.length - 1);
    const lo = Math.floor(pos);
    const hi = Math.min(lo + 1, RAMP.length - 1);
    const frac = pos - lo;
    const a = RAMP[lo] as [number, number, number];
    const b = RAMP[hi] as [number, number, number];
    const r = a[0] + (b[0] - a[0]) * frac;
    const g = a[1] + (b[1] - a[1]) * frac;
    const bch = a[2] + (b[2] - a[2]) * frac;
    return `#${channel(r)}${channel(g)}${channel(bch)}`;
}
