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
Generate a blockade with one of the seeded constructions and write it in the
instance format, next to an audit sidecar (`<name>.audit.json`) recording
which premises were verified exactly, which only sampled and which not at all.

To get started, type:

    python gen.py -h
"""

import os
import sys

from common.basis import BaseCommand, EXIT_OK, add_option, dump_json, rational_arg
from common.generators import CONSTRUCTIONS, GenSpec, generate
from common.graphcore import save_instance
from common.metrics import DEFAULT_BUDGET

def sidecar_path(path: str) -> str:
    return os.path.splitext(path)[0] + ".audit.json"

class GenerateCommand(BaseCommand):
    description = "Generate a blockade with a seeded random or recursive construction."
    epilog = f"Supported constructions: {', '.join(CONSTRUCTIONS)}"

    def add_arguments(self, parser):
        parser.add_argument("construction", nargs="?", choices=CONSTRUCTIONS, help="construction to run")
        add_option(parser, "spec", help="a path to a key=value generator spec; replaces the other parameters")
        add_option(parser, "seed", "s", type=int, help="64-bit seed of the random generator (required)")
        add_option(parser, "n", type=int, help="block size (random-bipartite, ordered-star)")
        add_option(parser, "k", type=int, help="number of leaves or path length, depending on the construction")
        add_option(parser, "t", type=int, help="number of star leaves (ordered-star)")
        add_option(parser, "W", "width", dest="W", type=int, help="block width (sparse-blockade, star-free, double-broom)")
        add_option(parser, "eps", type=rational_arg, help="coherence constant, written p/q")
        add_option(parser, "c", type=rational_arg, help="exponent c (ordered-star)")
        add_option(parser, "d", type=rational_arg, help="exponent d (ordered-star); chosen from t and c by default")
        add_option(parser, "p", type=int, help="maximum degree of the random host graph (star-free)")
        add_option(parser, "max-attempts", type=int, default=20, help="resampling cap (random-bipartite)")
        add_option(parser, "relaxed", action="store_true",
                   help="round layer sizes instead of moving n to an exactly integral value (ordered-star)")
        add_option(parser, "budget", type=int, default=DEFAULT_BUDGET, help="subset budget of the cohesion audit")
        add_option(parser, "output", "o", help="instance path; defaults to <construction>-<seed>.blk")

    def make_spec(self, args) -> GenSpec:
        if args.spec:
            with open(args.spec, encoding="utf-8") as source:
                return GenSpec.from_text(source.read())
        if args.construction is None:
            raise ValueError("a construction or -spec is required")
        if args.seed is None:
            raise ValueError("missing -seed")
        return GenSpec(
            construction=args.construction,
            seed=args.seed,
            n=args.n,
            k=args.k,
            t=args.t,
            W=args.W,
            eps=args.eps,
            c=args.c,
            d=args.d,
            p=args.p,
            max_attempts=args.max_attempts,
            relaxed=args.relaxed,
        )

    def execute(self, args) -> int:
        spec = self.make_spec(args)
        instance = generate(spec, args.budget)
        path = args.output or f"{spec.construction}-{spec.seed}.blk"
        save_instance(path, instance.blockade)
        dump_json({"spec": spec.to_dict(), "audit": instance.audit}, sidecar_path(path))
        blockade = instance.blockade
        print(f"{path}: {spec.construction} blockade written (k={blockade.length}, W={blockade.width}, "
              f"n={blockade.graph.n}, edges={blockade.graph.edge_count()})")
        return EXIT_OK

if __name__ == "__main__":
    sys.exit(GenerateCommand().run())
