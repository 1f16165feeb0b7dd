import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { describe, expect, it } from "vitest";

import { cliMain } from "../src/cli";
import { PathError, SchemaError, latestProfiles, parseSnapshotCsv, readTextFile } from "../src/csv";
import { renderFigure } from "../src/figures";
import { encodePng } from "../src/png";

const FIXTURES = path.join(__dirname, "fixtures");
const OVERLAY_CSV = path.join(FIXTURES, "fig12_snapshots.csv");
const ETA_SWEEP_CSV = path.join(FIXTURES, "fig3_sweep_snapshots.csv");
const BETA_SWEEP_CSV = path.join(FIXTURES, "fig4_sweep_snapshots.csv");

function pngDimensions(buffer: Buffer): { width: number; height: number } {
  expect(buffer.subarray(0, 8)).toEqual(Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]));
  expect(buffer.toString("ascii", 12, 16)).toBe("IHDR");
  return { width: buffer.readUInt32BE(16), height: buffer.readUInt32BE(20) };
}

function tmpDir(): string {
  return fs.mkdtempSync(path.join(os.tmpdir(), "dnls-figures-"));
}

describe("snapshot CSV parsing", () => {
  it("reads the documented schema", () => {
    const rows = parseSnapshotCsv(readTextFile(OVERLAY_CSV));
    expect(rows.length).toBeGreaterThan(0);
    const labels = new Set(rows.map((r) => r.run_label));
    expect(labels).toEqual(new Set(["numerical", "exact"]));
  });

  it("rejects a header-only file", () => {
    expect(() => parseSnapshotCsv("x,re_u,im_u,abs_u,t,run_label\n")).toThrow(SchemaError);
    expect(() => parseSnapshotCsv("x,re_u,im_u,abs_u,t,run_label\n")).toThrow(/no rows/);
  });

  it("rejects a missing column by name", () => {
    const text = "x,re_u,abs_u,t,run_label\n1,2,3,4,numerical\n";
    expect(() => parseSnapshotCsv(text)).toThrow(/missing column 'im_u'/);
  });

  it("keeps only each label's latest time", () => {
    const text = [
      "x,re_u,im_u,abs_u,t,run_label",
      "0,1,0,1,0,a",
      "1,2,0,2,0,a",
      "0,3,0,3,5,a",
      "1,4,0,4,5,a",
      "0,9,0,9,1,b",
    ].join("\n");
    const profiles = latestProfiles(parseSnapshotCsv(text));
    expect(profiles.get("a")!.map((r) => r.abs_u)).toEqual([3, 4]);
    expect(profiles.get("b")!.length).toBe(1);
  });
});

describe("figure rendering", () => {
  it("renders the overlay figures from linear-validation output", () => {
    const text = readTextFile(OVERLAY_CSV);
    const fig1 = renderFigure("fig1", [text]);
    const fig2 = renderFigure("fig2", [text]);
    expect(pngDimensions(fig1)).toEqual({ width: 900, height: 560 });
    expect(pngDimensions(fig2)).toEqual({ width: 900, height: 560 });
    expect(fig1.equals(fig2)).toBe(false); // real vs imaginary parts differ
  });

  it("renders one panel per sweep value", () => {
    const eta = renderFigure("fig3", [readTextFile(ETA_SWEEP_CSV)]);
    const beta = renderFigure("fig4", [readTextFile(BETA_SWEEP_CSV)]);
    // five sweep values -> five stacked panels
    expect(pngDimensions(eta)).toEqual({ width: 900, height: 280 * 5 });
    expect(pngDimensions(beta)).toEqual({ width: 900, height: 280 * 5 });
  });

  it("is deterministic", () => {
    const text = readTextFile(ETA_SWEEP_CSV);
    const first = renderFigure("fig3", [text]);
    const second = renderFigure("fig3", [text]);
    expect(first.equals(second)).toBe(true);
  });

  it("accepts multiple input CSVs", () => {
    const numerical = [
      "x,re_u,im_u,abs_u,t,run_label",
      "0,1,0,1,1,numerical",
      "1,0,1,1,1,numerical",
    ].join("\n");
    const exact = ["x,re_u,im_u,abs_u,t,run_label", "0,1,0,1,1,exact", "1,0,1,1,1,exact"].join("\n");
    const png = renderFigure("fig1", [numerical, exact]);
    expect(pngDimensions(png).width).toBe(900);
  });
});

describe("png encoder", () => {
  it("validates the buffer size", () => {
    expect(() => encodePng(2, 2, new Uint8Array(3))).toThrow(/does not match/);
  });

  it("round-trips dimensions", () => {
    const png = encodePng(3, 2, new Uint8Array(3 * 2 * 4));
    expect(pngDimensions(png)).toEqual({ width: 3, height: 2 });
  });
});

describe("command line", () => {
  it("renders every figure id from the harness CSVs and re-renders identically", () => {
    const out = tmpDir();
    const jobs: Array<[string, string]> = [
      ["fig1", OVERLAY_CSV],
      ["fig2", OVERLAY_CSV],
      ["fig3", ETA_SWEEP_CSV],
      ["fig4", BETA_SWEEP_CSV],
    ];
    for (const [figure, input] of jobs) {
      const target = path.join(out, `${figure}.png`);
      expect(cliMain(["plot", "--figure", figure, "--in", input, "--out", target])).toBe(0);
      const first = fs.readFileSync(target);
      expect(cliMain(["plot", "--figure", figure, "--in", input, "--out", target])).toBe(0);
      expect(fs.readFileSync(target).equals(first)).toBe(true);
      expect(pngDimensions(first).width).toBe(900);
    }
  });

  it("reports missing files as path errors", () => {
    const out = tmpDir();
    const code = cliMain(["plot", "--figure", "fig1", "--in", "does-not-exist.csv", "--out", path.join(out, "x.png")]);
    expect(code).toBe(2);
  });

  it("rejects unknown figures and bad usage", () => {
    expect(cliMain(["plot", "--figure", "fig9", "--in", OVERLAY_CSV, "--out", "x.png"])).toBe(2);
    expect(cliMain(["plot"])).toBe(2);
    expect(cliMain([])).toBe(2);
  });

  it("rejects schema violations with exit code 2", () => {
    const out = tmpDir();
    const bad = path.join(out, "bad.csv");
    fs.writeFileSync(bad, "x,re_u,im_u,abs_u,t,run_label\n");
    expect(cliMain(["plot", "--figure", "fig1", "--in", bad, "--out", path.join(out, "y.png")])).toBe(2);
  });
});
