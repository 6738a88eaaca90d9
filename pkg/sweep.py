# Copyright (c) 2024 Facenapalm
# 
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
# 
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
# 
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

"""
Run an experiment over a grid of parameters and seeds and write one CSV row
per (grid point, seed). Rows come out in grid order whatever the number of
worker processes, so the same command line always produces the same table
(the optional timing column aside).

Example:

    python sweep.py path -eps 1/4,1/6,1/8 -W 20,40 -seeds 1..50 -jobs 4 -o path.csv
"""

import csv
import io
import sys
from multiprocessing import Pool

from common.basis import BaseCommand, EXIT_OK, add_option, int_list_arg, rational_list_arg
from common.experiments import EXPERIMENTS, SCHEMA, expand_grid, header, run_row

class SweepCommand(BaseCommand):
    description = "Run an experiment over a parameter grid and seeds, writing a CSV table."
    epilog = f"Supported experiments: {', '.join(EXPERIMENTS)}"

    def add_arguments(self, parser):
        parser.add_argument("experiment", choices=tuple(EXPERIMENTS), help="experiment to run")
        for name in ("k", "t", "n", "W"):
            add_option(parser, name, dest=name, type=int_list_arg, help=f"values of {name}, e.g. 2,3 or 2..5")
        for name in ("eps", "c"):
            add_option(parser, name, type=rational_list_arg, help=f"values of {name}, e.g. 1/4,1/6")
        add_option(parser, "seeds", type=int_list_arg, default=list(range(10)), help="seeds, e.g. 1..50 (default 0..9)")
        add_option(parser, "jobs", "j", type=int, default=1, help="number of worker processes")
        add_option(parser, "timing", action="store_true", help="add a column with seconds per row")
        add_option(parser, "output", "o", help="a path to the CSV file; stdout by default")

    def execute(self, args) -> int:
        experiment = EXPERIMENTS[args.experiment]
        values = {name: getattr(args, name) for name in experiment.parameters
                  if getattr(args, name, None) is not None}
        grid = expand_grid(experiment, values, args.seeds)
        tasks = [(experiment.name, point, seed, args.timing) for point, seed in grid]

        buffer = io.StringIO()
        buffer.write(f"# schema: {SCHEMA}\n")
        buffer.write(f"# experiment: {experiment.name}\n")
        buffer.write(f"# rows: {len(tasks)}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header(experiment, args.timing))
        step = max(1, len(tasks) // 10)
        if args.jobs > 1:
            with Pool(processes=args.jobs) as pool:
                rows = pool.imap(run_row, tasks)
                self.collect(rows, writer, len(tasks), step)
        else:
            self.collect(map(run_row, tasks), writer, len(tasks), step)

        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="") as output:
                output.write(buffer.getvalue())
        else:
            sys.stdout.write(buffer.getvalue())
        return EXIT_OK

    def collect(self, rows, writer, total: int, step: int) -> None:
        for number, row in enumerate(rows, start=1):
            writer.writerow(row)
            if number % step == 0 or number == total:
                print(f"{number} of {total} rows processed", file=sys.stderr)

if __name__ == "__main__":
    sys.exit(SweepCommand().run())
