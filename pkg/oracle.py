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
Decide by exhaustive backtracking whether an instance contains a rainbow,
transversal or ordered transversal copy of a pattern.

The verdict is `found` (with a verified witness), `none` (the whole search
space was exhausted) or `indeterminate` (the budget ran out; exit code 3).

To get started, type:

    python oracle.py -h
"""

import sys

from common.basis import BaseCommand, EXIT_INDETERMINATE, EXIT_OK, add_option, dump_json
from common.graphcore import CopyKind, Pattern
from common.oracle import OracleStatus, SearchBudget, find_copy

KINDS = tuple(kind.value for kind in CopyKind)

class OracleCommand(BaseCommand):
    description = "Search an instance exhaustively for a copy of a pattern."
    epilog = f"Supported kinds: {', '.join(KINDS)}"

    def add_arguments(self, parser):
        parser.add_argument("instance", help="a path to the instance file")
        add_option(parser, "pattern", required=True, help="pattern, e.g. path:4, star+:3 or edges:3:0-1,1-2")
        add_option(parser, "kind", choices=KINDS, default=CopyKind.TRANSVERSAL.value, help="kind of copy")
        add_option(parser, "max-tuples", type=int, default=5_000_000, help="partial assignments to visit at most")
        add_option(parser, "max-seconds", type=float, help="wall-clock limit of the search")
        add_option(parser, "output", "o", help="a path to write the document to instead of stdout")

    def execute(self, args) -> int:
        blockade = self.load(args.instance)
        kind = CopyKind(args.kind)
        pattern = Pattern.parse(args.pattern, ordered=kind == CopyKind.ORDERED)
        result = find_copy(blockade, pattern, kind, SearchBudget(args.max_tuples, args.max_seconds))
        dump_json({"pattern": pattern.name, "kind": kind.value, **result.to_dict()}, args.output)
        if result.status == OracleStatus.INDETERMINATE:
            return EXIT_INDETERMINATE
        return EXIT_OK

if __name__ == "__main__":
    sys.exit(OracleCommand().run())
