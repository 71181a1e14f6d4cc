"""Command-line entry point for LabelFrag."""

import argparse
import logging
import sys
from typing import List, Optional

from . import __version__
from .commands import COMMANDS
from .config import Config
from .errors import UsageError, XFragError

logger = logging.getLogger(__name__)


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that reports bad flags as a UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def create_parser() -> CliParser:
    """Create the argument parser with one sub-parser per command.

    Returns:
        Configured parser
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--in', dest='input', help='Input file or fragment directory')
    common.add_argument('--out', help='Output file or directory')
    common.add_argument('--manifest', help='Manifest path (default: <in>/manifest.json)')
    common.add_argument('--seed', type=int, default=0, help='Random seed (default: 0)')
    common.add_argument('--attr', default=Config.ADDRESS_ATTR,
                        help=f'Address label attribute (default: {Config.ADDRESS_ATTR})')
    common.add_argument('-v', '--verbose', action='store_true', help='Debug logging')

    parser = CliParser(prog='labelfrag',
                       description='Prefix-label annotation and fragmentation of XML documents')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    subparsers = parser.add_subparsers(dest='command', required=True)
    for command in COMMANDS:
        command.register(subparsers, common)
    return parser


def configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, Config.LOG_LEVEL, logging.INFO)
    logging.basicConfig(level=level, format='%(levelname)s %(message)s', stream=sys.stderr,
                        force=True)


def main(argv: Optional[List[str]] = None) -> int:
    """Main application entry point.

    Returns:
        Exit code: 0 success, 1 usage error, 2 data error
    """
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        configure_logging(False)
        logger.error("❌ %s", exc)
        return exc.exit_code

    configure_logging(args.verbose)
    try:
        return args.handler(args)
    except XFragError as exc:
        logger.error("❌ %s", exc)
        return exc.exit_code
    except OSError as exc:
        logger.error("❌ %s", exc)
        return XFragError.exit_code


if __name__ == '__main__':
    sys.exit(main())
