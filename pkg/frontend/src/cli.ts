/**
 * plot --figure fig1|fig2|fig3|fig4 --in CSV[,CSV...] --out PATH
 *
 * Exit codes: 0 success, 2 usage/schema/path error.
 */

import * as fs from "node:fs";
import * as path from "node:path";
import { parseArgs } from "node:util";

import { PathError, SchemaError, readTextFile } from "./csv";
import { FIGURE_IDS, FigureId, renderFigure } from "./figures";

const USAGE = "usage: plot --figure fig1|fig2|fig3|fig4 --in CSV[,CSV...] --out PATH";

export function cliMain(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        figure: { type: "string" },
        in: { type: "string" },
        out: { type: "string" },
      },
    });
  } catch (err) {
    console.error(`plot: ${(err as Error).message}`);
    console.error(USAGE);
    return 2;
  }

  const { positionals, values } = parsed;
  if (positionals.length !== 1 || positionals[0] !== "plot" || !values.figure || !values.in || !values.out) {
    console.error(USAGE);
    return 2;
  }
  if (!FIGURE_IDS.includes(values.figure as FigureId)) {
    console.error(`plot: unknown figure '${values.figure}' (expected ${FIGURE_IDS.join(", ")})`);
    return 2;
  }

  try {
    const texts = values.in.split(",").map((p) => readTextFile(p));
    const png = renderFigure(values.figure as FigureId, texts);
    fs.mkdirSync(path.dirname(path.resolve(values.out)), { recursive: true });
    fs.writeFileSync(values.out, png);
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`plot: schema error: ${err.message}`);
      return 2;
    }
    if (err instanceof PathError) {
      console.error(`plot: path error: ${err.message}`);
      return 2;
    }
    throw err;
  }
  console.error(`plot: wrote ${values.out}`);
  return 0;
}

if (require.main === module) {
  process.exit(cliMain(process.argv.slice(2)));
}
