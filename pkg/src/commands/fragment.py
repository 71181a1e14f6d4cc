"""``fragment``: run one fragmentation operator and write fragments plus manifest."""

import logging
from pathlib import Path

from ..config import Config
from ..database import FragmentStore
from ..errors import UsageError
from ..fragmentation import (PathSelector, SizeConstraints, fragment_by_size, horizontal_fragment,
                             horizontal_quantile_fragment, horizontal_range_fragment,
                             hybrid_fragment, parse_selection, simplex_fragment,
                             vertical_fragment)
from .common import load_annotated, require

logger = logging.getLogger(__name__)

MODELS = ('horizontal', 'range', 'vertical', 'hybrid', 'size', 'simplex')


def register(subparsers, common) -> None:
    parser = subparsers.add_parser('fragment', parents=[common],
                                   help='Fragment a document and write a manifest')
    parser.add_argument('--model', required=True, choices=MODELS, help='Fragmentation model')
    parser.add_argument('--predicate', action='append', default=[],
                        help='Selection predicate "path op value" (repeatable, "and" joins terms)')
    parser.add_argument('--parts', type=int, help='Number of range fragments')
    parser.add_argument('--path',
                        help='Projected path (vertical, hybrid) or value path (range)')
    parser.add_argument('--threshold', type=int, help='Size threshold in bytes')
    parser.add_argument('--max-size', type=int, help='SimpleX subtree byte limit')
    parser.add_argument('--max-width', type=int, help='SimpleX fanout limit')
    parser.add_argument('--max-depth', type=int, help='SimpleX height limit')
    parser.add_argument('--ref-attr', default=Config.REF_ATTR,
                        help=f'Reference attribute (default: {Config.REF_ATTR})')
    parser.set_defaults(handler=cmd_fragment)


def _validate(args) -> None:
    require(args, 'input', 'out')
    model = args.model
    if model == 'horizontal' and not args.predicate:
        raise UsageError("fragment: horizontal needs at least one --predicate")
    if model == 'range':
        require(args, 'parts')
        if args.parts < 1:
            raise UsageError(f"fragment: --parts must be positive, got {args.parts}")
    if model in ('vertical', 'hybrid'):
        require(args, 'path')
    if model == 'size':
        require(args, 'threshold')
        if args.threshold <= 0:
            raise UsageError(f"fragment: --threshold must be positive, got {args.threshold}")
    if model == 'simplex':
        require(args, 'max_size', 'max_width', 'max_depth')
        if min(args.max_size, args.max_width, args.max_depth) <= 0:
            raise UsageError("fragment: SimpleX limits must be positive")


def cmd_fragment(args) -> int:
    """Fragment ``--in`` with ``--model`` into the directory ``--out``."""
    _validate(args)
    t = load_annotated(Path(args.input), args.attr)
    predicates = [parse_selection(text) for text in args.predicate]

    if args.model == 'horizontal':
        fragments, manifest = horizontal_fragment(t, predicates)
    elif args.model == 'range' and args.path:
        fragments, manifest = horizontal_quantile_fragment(t, args.path, args.parts)
    elif args.model == 'range':
        fragments, manifest = horizontal_range_fragment(t, args.parts)
    elif args.model == 'vertical':
        remainder, projected, manifest = vertical_fragment(t, PathSelector.parse(args.path),
                                                           args.ref_attr)
        fragments = [remainder, projected]
    elif args.model == 'hybrid':
        fragments, manifest = hybrid_fragment(t, predicates, PathSelector.parse(args.path),
                                              args.ref_attr)
    elif args.model == 'size':
        fragments, manifest = fragment_by_size(t, args.threshold)
    else:
        limits = SizeConstraints(args.max_size, args.max_width, args.max_depth)
        fragments, manifest = simplex_fragment(t, limits, args.ref_attr)

    FragmentStore(manifest, fragments).save(Path(args.out))
    logger.info("✅ %s: %d fragments in %s", args.model, len(fragments), args.out)
    return 0
