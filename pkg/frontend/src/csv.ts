/**
 * Strict CSV reading for the lab's documented output schemas.
 *
 * Every figure kind declares the exact header it consumes; anything else
 * is rejected up front with the offending column named, so a renamed or
 * reordered column never produces a silently wrong figure.
 */

export class SchemaError extends Error {
    constructor(message: string) {
        super(message);
        this.name = "SchemaError";
    }
}

export class EmptyData extends Error {
    constructor(message: string) {
        super(message);
        this.name = "EmptyData";
    }
}

/** Sweep knobs the spectrum schema allows in its first column. */
export const SWEEP_KNOBS = ["omega_m", "gamma", "theta", "omega_c1", "omega_c2"] as const;

export interface Table {
    header: string[];
    rows: string[][];
}

/** Split CSV text into header and data rows; no quoting, comma only. */
export function parseCsv(text: string): Table {
    const lines = text.split(/\r?\n/);
    while (lines.length > 0 && lines[lines.length - 1] === "") {
        lines.pop();
    }
    if (lines.length === 0) {
        throw new EmptyData("CSV has no header line");
    }
    const header = (lines[0] as string).split(",");
    const rows: string[][] = [];
    for (let i = 1; i < lines.length; i++) {
        const cells = (lines[i] as string).split(",");
        if (cells.length !== header.length) {
            throw new SchemaError(
                `row ${i + 1} has ${cells.length} cells, header has ${header.length}`);
        }
        rows.push(cells);
    }
    if (rows.length === 0) {
        throw new EmptyData("CSV has a header but zero data rows");
    }
    return { header, rows };
}

/** Check the header matches, naming the first missing column. */
export function requireHeader(table: Table, expected: readonly string[]): void {
    for (const name of expected) {
        if (!table.header.includes(name)) {
            throw new SchemaError(`missing header '${name}'`);
        }
    }
    if (table.header.length !== expected.length) {
        const extra = table.header.filter(h => !expected.includes(h));
        throw new SchemaError(`unexpected header '${extra[0]}'`);
    }
    for (let i = 0; i < expected.length; i++) {
        if (table.header[i] !== expected[i]) {
            throw new SchemaError(
                `header out of order: expected '${expected[i]}' at column ${i + 1}, ` +
                `found '${table.header[i]}'`);
        }
    }
}

function numericColumn(table: Table, index: number): number[] {
    const out: number[] = [];
    for (let i = 0; i < table.rows.length; i++) {
        const cell = (table.rows[i] as string[])[index] as string;
        const value = Number(cell);
        if (cell === "" || !Number.isFinite(value)) {
            throw new SchemaError(
                `non-numeric value '${cell}' in column '${table.header[index]}' ` +
                `at row ${i + 2}`);
        }
        out.push(value);
    }
    return out;
}

// ── spectrum: <knob>,branch,re_omega,im_omega ────────────────────────────

export interface SpectrumData {
    knob: string;
    /** one entry per branch: the swept values and the curve */
    branches: { branch: number; values: number[]; re: number[]; im: number[] }[];
}

export function readSpectrum(text: string): SpectrumData {
    const table = parseCsv(text);
    const knob = table.header[0] ?? "";
    if (!(SWEEP_KNOBS as readonly string[]).includes(knob)) {
        throw new SchemaError(
            `missing header: first column must be a sweep knob ` +
            `(${SWEEP_KNOBS.join(", ")}), found '${knob}'`);
    }
    requireHeader(table, [knob, "branch", "re_omega", "im_omega"]);
    const values = numericColumn(table, 0);
    const branch = numericColumn(table, 1);
    const re = numericColumn(table, 2);
    const im = numericColumn(table, 3);
    const byBranch = new Map<number, { values: number[]; re: number[]; im: number[] }>();
    for (let i = 0; i < branch.length; i++) {
        const b = branch[i] as number;
        let entry = byBranch.get(b);
        if (!entry) {
            entry = { values: [], re: [], im: [] };
            byBranch.set(b, entry);
        }
        entry.values.push(values[i] as number);
        entry.re.push(re[i] as number);
        entry.im.push(im[i] as number);
    }
    const branches = [...byBranch.entries()]
        .sort((a, b) => a[0] - b[0])
        .map(([b, e]) => ({ branch: b, ...e }));
    return { knob, branches };
}

// ── grid schemas: x,y,value over a complete rectangular grid ─────────────

export interface Grid {
    /** schema the header matched */
    schema: "phase-diagram" | "transmission" | "gap-map";
    xName: string;
    yName: string;
    valueName: string;
    xs: number[];
    ys: number[];
    /** cells[iy][ix]; classification grids hold "real"/"complex" */
    cells: (number | string)[][];
}

const GRID_HEADERS: { schema: Grid["schema"]; header: string[]; classified: boolean }[] = [
    { schema: "phase-diagram", header: ["x", "y", "classification"], classified: true },
    { schema: "transmission", header: ["omega_m", "omega", "s21_abs"], classified: false },
    { schema: "gap-map", header: ["theta", "gamma", "delta_omega"], classified: false },
];

/** Read any of the grid-shaped schemas into a dense (y, x) cell matrix. */
export function readGrid(text: string, accept?: Grid["schema"][]): Grid {
    const table = parseCsv(text);
    const allowed = GRID_HEADERS.filter(
        g => accept === undefined || accept.includes(g.schema));
    const match = allowed.find(
        g => g.header.length === table.header.length &&
            g.header.every((h, i) => table.header[i] === h));
    if (!match) {
        // name the first column the closest schema expected but did not get
        const closest = allowed
            .map(g => ({ g, hits: g.header.filter(h => table.header.includes(h)).length }))
            .sort((a, b) => b.hits - a.hits)[0];
        const want = closest ? closest.g.header : [];
        const miss = want.find(h => !table.header.includes(h));
        throw new SchemaError(
            miss !== undefined
                ? `missing header '${miss}'`
                : `header '${table.header.join(",")}' matches no grid schema`);
    }
    const xsRaw = numericColumn(table, 0);
    const ysRaw = numericColumn(table, 1);
    let valueCol: (number | string)[];
    if (match.classified) {
        valueCol = table.rows.map((row, i) => {
            const cell = row[2] as string;
            if (cell !== "real" && cell !== "complex") {
                throw new SchemaError(
                    `classification must be 'real' or 'complex', ` +
                    `found '${cell}' at row ${i + 2}`);
            }
            return cell;
        });
    } else {
        valueCol = numericColumn(table, 2);
    }
    // rebuild the axes from the distinct coordinates; the row order of the
    // producer is then irrelevant
    const xs = [...new Set(xsRaw)].sort((a, b) => a - b);
    const ys = [...new Set(ysRaw)].sort((a, b) => a - b);
    if (xs.length * ys.length !== table.rows.length) {
        throw new SchemaError(
            `grid is not complete: ${xs.length} x ${ys.length} axes ` +
            `but ${table.rows.length} rows`);
    }
    const xIndex = new Map(xs.map((v, i) => [v, i]));
    const yIndex = new Map(ys.map((v, i) => [v, i]));
    const cells: (number | string)[][] = ys.map(() => new Array(xs.length));
    for (let i = 0; i < table.rows.length; i++) {
        const ix = xIndex.get(xsRaw[i] as number) as number;
        const iy = yIndex.get(ysRaw[i] as number) as number;
        (cells[iy] as (number | string)[])[ix] = valueCol[i] as number | string;
    }
    return {
        schema: match.schema,
        xName: table.header[0] as string,
        yName: table.header[1] as string,
        valueName: table.header[2] as string,
        xs, ys, cells,
    };
}

// ── line cuts: delta,omega,s21_norm ──────────────────────────────────────

export interface LineCuts {
    cuts: { delta: number; omega: number[]; s21: number[] }[];
}

export function readLineCuts(text: string): LineCuts {
    const table = parseCsv(text);
    requireHeader(table, ["delta", "omega", "s21_norm"]);
    const delta = numericColumn(table, 0);
    const omega = numericColumn(table, 1);
    const s21 = numericColumn(table, 2);
    const byDelta = new Map<number, { omega: number[]; s21: number[] }>();
    for (let i = 0; i < delta.length; i++) {
        const d = delta[i] as number;
        let entry = byDelta.get(d);
        if (!entry) {
            entry = { omega: [], s21: [] };
            byDelta.set(d, entry);
        }
        entry.omega.push(omega[i] as number);
        entry.s21.push(s21[i] as number);
    }
    const cuts = [...byDelta.entries()]
        .sort((a, b) => a[0] - b[0])
        .map(([d, e]) => ({ delta: d, ...e }));
    return { cuts };
}

// ── critical rate: theta,p ───────────────────────────────────────────────

export interface CriticalRate {
    theta: number;
    p: number;
}

export function readCriticalRate(text: string): CriticalRate {
    const table = parseCsv(text);
    requireHeader(table, ["theta", "p"]);
    const theta = numericColumn(table, 0);
    const p = numericColumn(table, 1);
    return { theta: theta[0] as number, p: p[0] as number };
}
