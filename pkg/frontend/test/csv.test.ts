import { describe, expect, it } from "vitest";

import {
    EmptyData, SchemaError,
    parseCsv, readCriticalRate, readGrid, readLineCuts, readSpectrum,
    requireHeader,
} from "../src/csv.js";

const SPECTRUM = [
    "omega_m,branch,re_omega,im_omega",
    "20,0,19.6,-0.38",
    "20,1,19.6,0.38",
    "20,2,24.1,0",
    "20,3,26.2,0",
    "21,0,20.5,-0.31",
    "21,1,20.5,0.31",
    "21,2,24.2,0",
    "21,3,26.2,0",
    "",
].join("\n");

describe("parseCsv", () => {
    it("splits header and rows", () => {
        const t = parseCsv("a,b\n1,2\n3,4\n");
        expect(t.header).toEqual(["a", "b"]);
        expect(t.rows).toEqual([["1", "2"], ["3", "4"]]);
    });

    it("handles CRLF", () => {
        const t = parseCsv("a,b\r\n1,2\r\n");
        expect(t.rows).toEqual([["1", "2"]]);
    });

    it("rejects empty input", () => {
        expect(() => parseCsv("")).toThrow(EmptyData);
    });

    it("rejects header-only input", () => {
        expect(() => parseCsv("a,b\n")).toThrow(EmptyData);
    });

    it("rejects ragged rows", () => {
        expect(() => parseCsv("a,b\n1,2,3\n")).toThrow(SchemaError);
    });
});

describe("requireHeader", () => {
    it("names the missing column", () => {
        const t = parseCsv("x,y,klassification\n1,2,real\n");
        expect(() => requireHeader(t, ["x", "y", "classification"]))
            .toThrow(/missing header 'classification'/);
    });

    it("names an unexpected column", () => {
        const t = parseCsv("x,y,classification,extra\n1,2,real,9\n");
        expect(() => requireHeader(t, ["x", "y", "classification"]))
            .toThrow(/unexpected header 'extra'/);
    });

    it("rejects reordered columns", () => {
        const t = parseCsv("y,x,classification\n1,2,real\n");
        expect(() => requireHeader(t, ["x", "y", "classification"]))
            .toThrow(/out of order/);
    });
});

describe("readSpectrum", () => {
    it("groups rows into branches", () => {
        const data = readSpectrum(SPECTRUM);
        expect(data.knob).toBe("omega_m");
        expect(data.branches.map(b => b.branch)).toEqual([0, 1, 2, 3]);
        expect(data.branches[0]!.values).toEqual([20, 21]);
        expect(data.branches[1]!.im).toEqual([0.38, 0.31]);
    });

    it("accepts every documented sweep knob", () => {
        for (const knob of ["omega_m", "gamma", "theta", "omega_c1", "omega_c2"]) {
            const text = `${knob},branch,re_omega,im_omega\n0,0,1,0\n`;
            expect(readSpectrum(text).knob).toBe(knob);
        }
    });

    it("rejects a non-knob first column", () => {
        const text = "frequency,branch,re_omega,im_omega\n0,0,1,0\n";
        expect(() => readSpectrum(text)).toThrow(SchemaError);
    });

    it("rejects a mutated value column", () => {
        const text = "omega_m,branch,re_part,im_omega\n0,0,1,0\n";
        expect(() => readSpectrum(text)).toThrow(/missing header 're_omega'/);
    });

    it("rejects non-numeric cells", () => {
        const text = "omega_m,branch,re_omega,im_omega\n0,0,abc,0\n";
        expect(() => readSpectrum(text)).toThrow(/non-numeric/);
    });
});

describe("readGrid", () => {
    const PHASE = "x,y,classification\n0,0,real\n0,1,complex\n1,0,real\n1,1,real\n";

    it("reconstructs the grid from any row order", () => {
        const shuffled = "x,y,classification\n1,1,real\n0,0,real\n1,0,real\n0,1,complex\n";
        const a = readGrid(PHASE);
        const b = readGrid(shuffled);
        expect(a.cells).toEqual(b.cells);
        expect(a.xs).toEqual([0, 1]);
        expect(a.ys).toEqual([0, 1]);
        expect(a.cells[1]![0]).toBe("complex");
    });

    it("identifies each grid schema", () => {
        expect(readGrid(PHASE).schema).toBe("phase-diagram");
        expect(readGrid("omega_m,omega,s21_abs\n0,0,1\n0,1,0.5\n1,0,0.2\n1,1,1\n").schema)
            .toBe("transmission");
        expect(readGrid("theta,gamma,delta_omega\n0,0,0\n0,1,0\n1,0,2\n1,1,1\n").schema)
            .toBe("gap-map");
    });

    it("restricts to accepted schemas", () => {
        expect(() => readGrid(PHASE, ["gap-map"])).toThrow(SchemaError);
    });

    it("names the missing header of the closest schema", () => {
        const text = "x,y,klassification\n0,0,real\n";
        expect(() => readGrid(text)).toThrow(/missing header 'classification'/);
    });

    it("rejects incomplete grids", () => {
        const text = "x,y,classification\n0,0,real\n0,1,real\n1,0,real\n";
        expect(() => readGrid(text)).toThrow(/not complete/);
    });

    it("rejects unknown classification labels", () => {
        const text = "x,y,classification\n0,0,real\n0,1,kinda\n1,0,real\n1,1,real\n";
        expect(() => readGrid(text)).toThrow(/'real' or 'complex'/);
    });
});

describe("readLineCuts", () => {
    it("groups by detuning, sorted", () => {
        const text = "delta,omega,s21_norm\n2,24,0.5\n2,25,1\n-2,24,0.9\n-2,25,1\n";
        const cuts = readLineCuts(text).cuts;
        expect(cuts.map(c => c.delta)).toEqual([-2, 2]);
        expect(cuts[0]!.s21).toEqual([0.9, 1]);
    });
});

describe("readCriticalRate", () => {
    it("reads the single row", () => {
        const rate = readCriticalRate("theta,p\n0,1.485198974609375\n");
        expect(rate.theta).toBe(0);
        expect(rate.p).toBeCloseTo(1.4852, 4);
    });

    it("rejects a mutated header", () => {
        expect(() => readCriticalRate("theta,P\n0,1.48\n"))
            .toThrow(/missing header 'p'/);
    });
});
