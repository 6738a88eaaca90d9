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
Inspect regime cards and check premises on instances:

  * `card` prints the constants and thresholds of a construction, optionally
    evaluated at a width;
  * `regime` runs the premise checks a card asks for on an instance;
  * `coherence`, `cohesion` and `local-degree` run a single check;
  * `manyedges` checks the degree-count lemma on a two-block instance;
  * `covering` builds a covering digraph and re-verifies it;
  * `binom` checks the binomial estimate exhaustively up to -n.

An inconclusive (budget-limited) verdict exits with code 3.

To get started, type:

    python audit.py -h
"""

import sys

from common.basis import BaseCommand, EXIT_INDETERMINATE, EXIT_OK, add_option, dump_json, int_list_arg, rational_arg
from common.bounds import THEOREMS, binom_upper, check_regime, regime_card
from common.covering import build_covering_digraph, covering_outdegree_report, verify_covering_digraph
from common.metrics import (DEFAULT_BUDGET, check_coherence, check_cohesion, check_manyedges_premise_conclusion,
                            local_degree_profile)
from common.utils import format_rational

CHECKS = ("card", "regime", "coherence", "cohesion", "local-degree", "manyedges", "covering", "binom")

class AuditCommand(BaseCommand):
    description = "Print regime cards and verify premises of the constructions on an instance."
    epilog = f"Supported theorem ids: {', '.join(THEOREMS)}"

    def add_arguments(self, parser):
        parser.add_argument("check", choices=CHECKS, help="what to audit")
        parser.add_argument("instance", nargs="?", help="a path to the instance file (not needed for card, binom)")
        add_option(parser, "theorem", choices=THEOREMS, help="regime card to use (card, regime)")
        add_option(parser, "k", type=int, help="card parameter k")
        add_option(parser, "t", type=int, help="card parameter t")
        add_option(parser, "d", type=int, help="card parameter d")
        add_option(parser, "c", type=rational_arg, help="exponent c")
        add_option(parser, "eps", type=rational_arg, help="coherence constant, written p/q")
        add_option(parser, "tau", type=rational_arg, help="covering digraph constant")
        add_option(parser, "W", "width", dest="W", type=int, help="width to evaluate a card at (card)")
        add_option(parser, "x", type=int, help="first set size (cohesion)")
        add_option(parser, "y", type=int, help="second set size (cohesion)")
        add_option(parser, "subset", type=int_list_arg, help="X inside the first block (manyedges); whole block by default")
        add_option(parser, "n", type=int, default=60, help="largest n of the binomial check")
        add_option(parser, "budget", type=int, default=DEFAULT_BUDGET, help="subset budget of the exact searches")
        add_option(parser, "output", "o", help="a path to write the document to instead of stdout")

    def need(self, args, *names: str) -> None:
        missing = [name for name in names if getattr(args, name) is None]
        if missing:
            raise ValueError(f"'{args.check}' needs {', '.join('-' + name for name in missing)}")

    def card(self, args, k=None):
        self.need(args, "theorem")
        return regime_card(args.theorem, k=args.k if args.k is not None else k, t=args.t, d=args.d, c=args.c,
                           eps=args.eps, tau=args.tau)

    def execute(self, args) -> int:
        if args.check == "card":
            dump_json(self.card(args).to_dict(args.W), args.output)
            return EXIT_OK
        if args.check == "binom":
            failures = [(n, k) for n in range(1, args.n + 1) for k in range(1, n + 1) if not binom_upper(n, k).holds]
            dump_json({"n": args.n, "holds": not failures, "failures": failures}, args.output)
            return EXIT_OK

        self.need(args, "instance")
        blockade = self.load(args.instance)
        satisfied = True
        if args.check == "regime":
            card = self.card(args, k=blockade.length)
            verdict = check_regime(blockade, card, args.budget)
            document = {"card": card.to_dict(blockade.width), "verdict": verdict.to_dict()}
            satisfied = verdict.satisfied
        elif args.check == "coherence":
            self.need(args, "eps")
            report = check_coherence(blockade, args.eps, args.budget)
            document = report.to_dict()
            satisfied = report.satisfied
        elif args.check == "cohesion":
            self.need(args, "x", "y")
            report = check_cohesion(blockade, args.x, args.y, args.budget)
            document = report.to_dict()
            satisfied = report.satisfied
        elif args.check == "local-degree":
            profile = local_degree_profile(blockade)
            document = {
                "local_degree": profile.value,
                "vertex": profile.vertex,
                "source_block": profile.source_block,
                "target_block": profile.target_block,
            }
            if args.eps is not None:
                document["below_eps_w"] = profile.value < args.eps * blockade.width
                document["eps_w"] = format_rational(args.eps * blockade.width)
        elif args.check == "manyedges":
            self.need(args, "eps", "c")
            subset = args.subset if args.subset else blockade.block(0)
            report = check_manyedges_premise_conclusion(blockade, args.eps, args.c, subset, args.budget)
            document = report.to_dict()
            satisfied = report.premises_verified is not None
        else:
            tau = args.tau if args.tau is not None else regime_card("covering").constant("tau")
            digraph = build_covering_digraph(blockade, tau)
            problems = verify_covering_digraph(blockade, digraph)
            document = {
                "digraph": digraph.to_dict(),
                "degrees": covering_outdegree_report(digraph).to_dict(),
                "problems": problems,
            }
        dump_json(document, args.output)
        return EXIT_OK if satisfied is not None else EXIT_INDETERMINATE

if __name__ == "__main__":
    sys.exit(AuditCommand().run())
