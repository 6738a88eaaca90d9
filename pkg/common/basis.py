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
This module contains the command class every root script derives from. It
builds the argument parser, configures logging and maps the exceptions of
the library onto the exit codes of the command line.
"""

import json
import logging
import sys
from argparse import ArgumentParser, ArgumentTypeError
from fractions import Fraction
from typing import Iterable, List, Optional

from common.generators import GenerationError
from common.graphcore import Blockade, InstanceError, PreconditionError, load_instance
from common.oracle import BudgetExceeded
from common.utils import parse_rational

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2
EXIT_INDETERMINATE = 3

class UsageError(RuntimeError):
    """Command line could not be parsed."""

class CommandParser(ArgumentParser):
    """ArgumentParser that raises instead of exiting with status 2."""

    def error(self, message):
        raise UsageError(message)

def rational_arg(value: str) -> Fraction:
    """Parse a `p/q` rational for ArgumentParser."""
    try:
        return parse_rational(value)
    except ValueError as error:
        raise ArgumentTypeError(str(error)) from error

def rational_list_arg(value: str) -> List[Fraction]:
    """Parse a comma-separated list of rationals, e.g. `1/4,1/6`."""
    return [rational_arg(item) for item in value.split(",") if item.strip()]

def int_list_arg(value: str) -> List[int]:
    """Parse a comma-separated list of integers; `a..b` stands for a range."""
    result = []
    for item in value.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            if ".." in item:
                low, high = item.split("..", 1)
                result.extend(range(int(low), int(high) + 1))
            else:
                result.append(int(item))
        except ValueError as error:
            raise ArgumentTypeError(f"'{item}' is not an integer or a range a..b") from error
    return result

def add_option(parser: ArgumentParser, name: str, *aliases: str, **kwargs) -> None:
    """Register `-name` and `--name` (plus single-dash aliases)."""
    flags = [f"-{name}", f"--{name}"] + [f"-{alias}" for alias in aliases]
    parser.add_argument(*flags, **kwargs)

def dump_json(document: dict, path: Optional[str] = None) -> None:
    """Print a document to stdout, or write it to a file when a path is given."""
    text = json.dumps(document, indent=2)
    if path:
        with open(path, "w", encoding="utf-8") as output:
            output.write(text + "\n")
    else:
        print(text)

def report_error(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)

class BaseCommand:
    """
    A common ancestor for the command scripts.

    Inherited classes set `description`, extend `add_arguments()` and
    implement `execute()`, which returns the exit code.
    """

    description = ""
    epilog = None

    def build_parser(self) -> CommandParser:
        parser = CommandParser(description=self.description, epilog=self.epilog, fromfile_prefix_chars="@")
        add_option(parser, "verbose", "v", action="store_true", help="log stage decisions to stderr")
        self.add_arguments(parser)
        return parser

    def add_arguments(self, parser: ArgumentParser) -> None:
        raise NotImplementedError(f"{self.__class__.__name__}.add_arguments() is not implemented")

    def execute(self, args) -> int:
        raise NotImplementedError(f"{self.__class__.__name__}.execute() is not implemented")

    def load(self, path: str) -> Blockade:
        return load_instance(path)

    def run(self, argv: Optional[Iterable[str]] = None) -> int:
        """Parse command line arguments and run the command."""
        parser = self.build_parser()
        try:
            args = parser.parse_args(None if argv is None else list(argv))
        except UsageError as error:
            parser.print_usage(sys.stderr)
            report_error(str(error))
            return EXIT_USAGE

        logging.basicConfig(
            level=logging.DEBUG if args.verbose else logging.WARNING,
            format="%(levelname)s %(name)s: %(message)s",
            stream=sys.stderr,
        )
        try:
            return self.execute(args)
        except BudgetExceeded as error:
            report_error(f"indeterminate: {error}")
            return EXIT_INDETERMINATE
        except GenerationError as error:
            report_error(str(error))
            if error.best is not None:
                print(json.dumps({"best_candidate_audit": error.best.audit}, indent=2), file=sys.stderr)
            return EXIT_USAGE
        except (InstanceError, PreconditionError, ValueError, KeyError, OSError) as error:
            report_error(str(error))
            return EXIT_USAGE
