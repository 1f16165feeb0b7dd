/**
 * Figure builders: overlay plots (numerical solid vs exact dotted) and
 * stacked parameter-sweep panels, rendered from snapshot CSV rows alone.
 */

import { SchemaError, SnapshotRow, latestProfiles, parseSnapshotCsv } from "./csv";
import { encodePng } from "./png";
import { BLACK, Color, GRAY, LIGHT_GRAY, Raster, textWidth } from "./raster";

export type FigureId = "fig1" | "fig2" | "fig3" | "fig4";

export const FIGURE_IDS: FigureId[] = ["fig1", "fig2", "fig3", "fig4"];

const MARGIN = { left: 72, right: 20, top: 30, bottom: 44 };

interface Series {
  xs: number[];
  ys: number[];
  color: Color;
  dash: number[];
  label: string;
}

function formatTick(value: number): string {
  if (value === 0) {
    return "0";
  }
  return Number(value.toPrecision(4)).toString();
}

function niceTicks(lo: number, hi: number, target = 5): number[] {
  if (!(hi > lo)) {
    return [lo];
  }
  const rawStep = (hi - lo) / target;
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const scaled = rawStep / power;
  const step = (scaled >= 5 ? 5 : scaled >= 2 ? 2 : 1) * power;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

interface PanelRect {
  x0: number;
  y0: number;
  width: number;
  height: number;
}

function drawPanel(
  raster: Raster,
  rect: PanelRect,
  series: Series[],
  xLabel: string,
  yLabel: string,
  title: string,
  yRange?: [number, number],
): void {
  const xs = series.flatMap((s) => s.xs);
  const ys = series.flatMap((s) => s.ys);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  let yMin = yRange ? yRange[0] : Math.min(...ys);
  let yMax = yRange ? yRange[1] : Math.max(...ys);
  if (yMax === yMin) {
    yMax = yMin + 1;
  }
  const pad = 0.05 * (yMax - yMin);
  yMin -= pad;
  yMax += pad;

  const plotX = rect.x0 + MARGIN.left;
  const plotY = rect.y0 + MARGIN.top;
  const plotW = rect.width - MARGIN.left - MARGIN.right;
  const plotH = rect.height - MARGIN.top - MARGIN.bottom;
  const toPx = (x: number) => plotX + ((x - xMin) / (xMax - xMin)) * plotW;
  const toPy = (y: number) => plotY + plotH - ((y - yMin) / (yMax - yMin)) * plotH;

  for (const tick of niceTicks(xMin, xMax)) {
    const px = Math.round(toPx(tick));
    raster.drawLine(px, plotY, px, plotY + plotH, LIGHT_GRAY);
    raster.drawLine(px, plotY + plotH, px, plotY + plotH + 4, BLACK);
    const label = formatTick(tick);
    raster.drawText(px - textWidth(label) / 2, plotY + plotH + 8, label, BLACK);
  }
  for (const tick of niceTicks(yMin, yMax)) {
    const py = Math.round(toPy(tick));
    raster.drawLine(plotX, py, plotX + plotW, py, LIGHT_GRAY);
    raster.drawLine(plotX - 4, py, plotX, py, BLACK);
    const label = formatTick(tick);
    raster.drawText(plotX - 8 - textWidth(label), py - 3, label, BLACK);
  }
  raster.drawRect(plotX, plotY, plotX + plotW, plotY + plotH, BLACK);
  raster.drawText(plotX + plotW / 2 - textWidth(xLabel) / 2, rect.y0 + rect.height - 12, xLabel, BLACK);
  raster.drawText(rect.x0 + 6, plotY - 4, yLabel, BLACK);
  raster.drawText(plotX + plotW / 2 - textWidth(title) / 2, rect.y0 + 8, title, BLACK);

  let legendY = plotY + 6;
  for (const s of series) {
    for (let i = 0; i + 1 < s.xs.length; i++) {
      raster.drawLine(toPx(s.xs[i]), toPy(s.ys[i]), toPx(s.xs[i + 1]), toPy(s.ys[i + 1]), s.color, s.dash);
    }
    if (series.length > 1) {
      const legendX = plotX + plotW - textWidth(s.label) - 40;
      raster.drawLine(legendX, legendY + 3, legendX + 24, legendY + 3, s.color, s.dash);
      raster.drawText(legendX + 30, legendY, s.label, s.color);
      legendY += 12;
    }
  }
}

function overlayFigure(rows: SnapshotRow[], component: "re_u" | "im_u", yLabel: string): Raster {
  const profiles = latestProfiles(rows);
  const labels = [...profiles.keys()].sort((a, b) => {
    const rank = (label: string) => (label === "numerical" ? 0 : label === "exact" ? 1 : 2);
    return rank(a) - rank(b) || a.localeCompare(b);
  });
  const series: Series[] = labels.map((label) => {
    const profile = profiles.get(label)!;
    return {
      xs: profile.map((r) => r.x),
      ys: profile.map((r) => r[component]),
      color: label === "exact" ? GRAY : BLACK,
      dash: label === "exact" ? [2, 4] : [],
      label,
    };
  });
  const raster = new Raster(900, 560);
  drawPanel(raster, { x0: 0, y0: 0, width: 900, height: 560 }, series, "x", yLabel, yLabel);
  return raster;
}

function sweepFigure(rows: SnapshotRow[]): Raster {
  const profiles = latestProfiles(rows);
  const labels: string[] = [];
  for (const row of rows) {
    if (!labels.includes(row.run_label)) {
      labels.push(row.run_label); // keep file order: largest value first
    }
  }
  const panelHeight = 280;
  const raster = new Raster(900, panelHeight * labels.length);
  let yMax = 0;
  for (const profile of profiles.values()) {
    yMax = Math.max(yMax, ...profile.map((r) => r.abs_u));
  }
  labels.forEach((label, index) => {
    const profile = profiles.get(label)!;
    const series: Series[] = [
      {
        xs: profile.map((r) => r.x),
        ys: profile.map((r) => r.abs_u),
        color: BLACK,
        dash: [],
        label,
      },
    ];
    drawPanel(
      raster,
      { x0: 0, y0: index * panelHeight, width: 900, height: panelHeight },
      series,
      "x",
      "|u|",
      label,
      [0, yMax],
    );
  });
  return raster;
}

export function renderFigure(figure: FigureId, csvTexts: string[]): Buffer {
  if (csvTexts.length === 0) {
    throw new SchemaError("no input CSVs given");
  }
  const rows = csvTexts.flatMap(parseSnapshotCsv);
  let raster: Raster;
  switch (figure) {
    case "fig1":
      raster = overlayFigure(rows, "re_u", "Re(u)");
      break;
    case "fig2":
      raster = overlayFigure(rows, "im_u", "Im(u)");
      break;
    case "fig3":
    case "fig4":
      raster = sweepFigure(rows);
      break;
  }
  return encodePng(raster.width, raster.height, raster.pixels);
}
