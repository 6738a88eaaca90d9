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
Run one of the constructive finders on an instance and print either the
verified witness or the stage trace that explains where the construction
stopped.

Exit code is 0 when a witness was found, 2 when the finder failed and 1 when
the instance or the parameters do not meet the finder's preconditions.

To get started, type:

    python find.py -h
"""

import sys

from common.basis import BaseCommand, EXIT_FAILURE, EXIT_OK, add_option, dump_json, int_list_arg, rational_arg
from common.coherent import find_rainbow_star, find_transversal_path
from common.covering import find_transversal_broom
from common.cycles import find_transversal_c4, find_transversal_cycle
from common.graphcore import Pattern
from common.metrics import DEFAULT_BUDGET
from common.oracle import SearchBudget
from common.ordered import embed_ordered_tree, find_ordered_caterpillar
from common.utils import to_mask

FINDERS = ("path", "star", "broom", "c4", "cycle", "caterpillar", "tree")

class FindCommand(BaseCommand):
    description = "Look for a transversal induced subgraph with one of the constructive finders."
    epilog = f"Supported finders: {', '.join(FINDERS)}"

    def add_arguments(self, parser):
        parser.add_argument("finder", choices=FINDERS, help="which construction to run")
        parser.add_argument("instance", help="a path to the instance file")
        add_option(parser, "eps", type=rational_arg, help="coherence constant, written p/q; the card's value by default")
        add_option(parser, "k", type=int, help="star leaves (star) or path length (broom)")
        add_option(parser, "t", type=int, help="broom leaves")
        add_option(parser, "tau", type=rational_arg, default=None, help="covering digraph constant (broom), 1/6 by default")
        add_option(parser, "c", type=rational_arg, help="exponent c (c4, tree)")
        add_option(parser, "d", type=int, help="maximum caterpillar degree bound d (caterpillar)")
        add_option(parser, "pattern", help="ordered pattern (caterpillar, tree), e.g. path:4 or edges:4:0-1,1-2,1-3; "
                                           "a path through all blocks by default")
        add_option(parser, "head", type=int, default=0, help="caterpillar head mapped into the first block")
        add_option(parser, "subset", type=int_list_arg, help="vertices of the first block to start from (caterpillar)")
        add_option(parser, "no-floor", action="store_true", help="skip the size floor of the starting set (caterpillar)")
        add_option(parser, "check-premises", action="store_true", help="verify the coherence premises before searching")
        add_option(parser, "budget", type=int, default=DEFAULT_BUDGET, help="subset budget of premise checks")
        add_option(parser, "max-tuples", type=int, default=1_000_000, help="backtracking budget (tree)")
        add_option(parser, "output", "o", help="a path to write the document to instead of stdout")

    def pattern(self, args, length: int) -> Pattern:
        if args.pattern:
            return Pattern.parse(args.pattern, ordered=True)
        return Pattern.path(length, ordered=True)

    def execute(self, args) -> int:
        blockade = self.load(args.instance)
        if args.finder == "path":
            outcome = find_transversal_path(blockade, args.eps, args.check_premises, args.budget)
        elif args.finder == "star":
            if args.k is None:
                raise ValueError("star finder needs -k")
            outcome = find_rainbow_star(blockade, args.k, args.eps, args.check_premises, args.budget)
        elif args.finder == "broom":
            if args.k is None or args.t is None:
                raise ValueError("broom finder needs -k and -t")
            extra = {} if args.tau is None else {"tau": args.tau}
            outcome = find_transversal_broom(blockade, args.k, args.t, eps=args.eps,
                                             check_premises=args.check_premises, budget=args.budget, **extra)
        elif args.finder == "c4":
            outcome = find_transversal_c4(blockade, args.eps, args.c, args.check_premises, args.budget)
        elif args.finder == "cycle":
            outcome = find_transversal_cycle(blockade, args.eps, args.check_premises, args.budget)
        elif args.finder == "caterpillar":
            subset = to_mask(args.subset) if args.subset else None
            outcome = find_ordered_caterpillar(blockade, self.pattern(args, blockade.length), args.head, subset,
                                               args.eps, args.d, not args.no_floor)
        else:
            outcome = embed_ordered_tree(blockade, self.pattern(args, blockade.length), args.c,
                                         SearchBudget(max_tuples=args.max_tuples))
        dump_json(outcome.to_dict(blockade.width), args.output)
        return EXIT_OK if outcome.succeeded else EXIT_FAILURE

if __name__ == "__main__":
    sys.exit(FindCommand().run())
