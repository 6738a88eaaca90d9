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
Count the copies of a pattern in an instance. The `ordered-tree` mode counts
ordered transversal copies of an ordered tree and prints the guaranteed
lower bound 4^(1-k) * W^(k-(k-1)c) next to the exact count.

A count is never partial: when the budget runs out the exit code is 3.

To get started, type:

    python count.py -h
"""

import sys
from fractions import Fraction

import networkx as nx

from common.basis import BaseCommand, EXIT_OK, add_option, dump_json, rational_arg
from common.bounds import check_regime, counttree_floor, regime_card
from common.graphcore import CopyKind, Pattern, PreconditionError
from common.metrics import DEFAULT_BUDGET
from common.oracle import SearchBudget, count_copies, count_copies_naive

MODES = tuple(kind.value for kind in CopyKind) + ("ordered-tree",)

class CountCommand(BaseCommand):
    description = "Count rainbow, transversal or ordered transversal copies of a pattern."
    epilog = f"Supported modes: {', '.join(MODES)}"

    def add_arguments(self, parser):
        parser.add_argument("mode", choices=MODES, help="kind of copies to count")
        parser.add_argument("instance", help="a path to the instance file")
        add_option(parser, "pattern", help="pattern, e.g. star:2; a path through all blocks by default")
        add_option(parser, "c", type=rational_arg, help="exponent c of the lower bound (ordered-tree), 1/(k-1) by default")
        add_option(parser, "eps", type=rational_arg, help="cohesion constant of the premise check (ordered-tree)")
        add_option(parser, "check-premises", action="store_true", help="verify the premises of the lower bound")
        add_option(parser, "budget", type=int, default=DEFAULT_BUDGET, help="subset budget of premise checks")
        add_option(parser, "max-tuples", type=int, default=5_000_000, help="partial assignments to visit at most")
        add_option(parser, "naive", action="store_true", help="cross-check with the plain enumerator")
        add_option(parser, "output", "o", help="a path to write the document to instead of stdout")

    def execute(self, args) -> int:
        blockade = self.load(args.instance)
        ordered = args.mode in (CopyKind.ORDERED.value, "ordered-tree")
        kind = CopyKind.ORDERED if args.mode == "ordered-tree" else CopyKind(args.mode)
        if args.pattern:
            pattern = Pattern.parse(args.pattern, ordered=ordered)
        else:
            pattern = Pattern.path(blockade.length, ordered=ordered)
        count = count_copies(blockade, pattern, kind, SearchBudget(max_tuples=args.max_tuples))
        document = {"pattern": pattern.name, "kind": kind.value, "count": count}
        if args.naive:
            naive = count_copies_naive(blockade, pattern, kind)
            document["naive_count"] = naive
            document["agree"] = naive == count
        if args.mode == "ordered-tree":
            document.update(self.tree_bound(blockade, pattern, count, args))
        dump_json(document, args.output)
        return EXIT_OK

    def tree_bound(self, blockade, pattern: Pattern, count: int, args) -> dict:
        if pattern.size < 2 or not nx.is_tree(pattern.to_networkx()):
            raise PreconditionError(f"pattern {pattern.name} is not a tree on at least two vertices")
        k = pattern.size
        c = Fraction(1, k - 1) if args.c is None else args.c
        card = regime_card("tree-count", k=k, c=c, eps=args.eps)
        floor = counttree_floor(k, c, blockade.width)
        result = {
            "floor": floor,
            "bound_holds": count >= floor,
            "card": card.to_dict(blockade.width),
        }
        if args.check_premises:
            result["premises"] = check_regime(blockade, card, args.budget).to_dict()
        return result

if __name__ == "__main__":
    sys.exit(CountCommand().run())
