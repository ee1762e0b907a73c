/**
 * Command line entry point.
 *
 *   render --figure fig5 --in fig_data/fig5 --out out
 *   render --figure fig1,fig2 --in fig_data --out out
 *   render --figure all --in fig_data --out out
 *
 * With a single figure, --in points directly at that figure's data
 * directory. With several (or "all"), --in is the parent directory
 * holding one subdirectory per figure. Output is <out>/<figN>.svg.
 * Figures render independently and concurrently; a missing file or
 * column fails that figure with a named error.
 */

import { mkdir, writeFile } from "node:fs/promises";
import { existsSync } from "node:fs";
import { join } from "node:path";
import { parseArgs } from "node:util";
import { pathToFileURL } from "node:url";
import { RECIPES } from "./recipes.js";

interface Job { name: string; dir: string }

export async function run(argv: string[]): Promise<number> {
  const { values } = parseArgs({
    args: argv,
    options: {
      figure: { type: "string" },
      in: { type: "string" },
      out: { type: "string" },
    },
  });
  if (!values.figure || !values.in || !values.out) {
    console.error("usage: render --figure <figN|figN,figM|all> --in <dir> --out <dir>");
    return 2;
  }
  const names = values.figure === "all"
    ? Object.keys(RECIPES)
    : values.figure.split(",").map((s) => s.trim()).filter((s) => s !== "");
  for (const name of names) {
    if (!(name in RECIPES)) {
      console.error(`unknown figure: ${name} (have ${Object.keys(RECIPES).join(", ")})`);
      return 2;
    }
  }
  const jobs: Job[] = names.map((name) => ({
    name,
    dir: names.length === 1 && !existsSync(join(values.in!, name))
      ? values.in!
      : join(values.in!, name),
  }));
  await mkdir(values.out, { recursive: true });

  const results = await Promise.allSettled(jobs.map(async (job) => {
    const svg = RECIPES[job.name].render(job.dir);
    const dest = join(values.out!, `${job.name}.svg`);
    await writeFile(dest, svg, "utf8");
    return dest;
  }));
  let failed = 0;
  results.forEach((res, i) => {
    if (res.status === "fulfilled") {
      console.log(`wrote ${res.value}`);
    } else {
      failed += 1;
      const msg = res.reason instanceof Error ? res.reason.message : String(res.reason);
      console.error(`${jobs[i].name}: ${msg}`);
    }
  });
  return failed === 0 ? 0 : 1;
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  run(process.argv.slice(2)).then((code) => { process.exitCode = code; });
}
