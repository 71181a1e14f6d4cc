"""Fragment operators, manifests and structure statistics."""

from .fragment import (Fragment, FragmentModel, container_fragment, fragment_file_name,
                       rooted_fragment)
from .horizontal import (horizontal_fragment, horizontal_quantile_fragment,
                         horizontal_range_fragment, predicate_guards)
from .manifest import FragmentEntry, Link, Manifest, build_manifest
from .predicate import (Conjunction, LabelPredicate, Op, PathSelector, Selection,
                        SimplePredicate, SizeConstraints, as_decimal, compare,
                        evaluate_predicate, format_path, leaves, parse_op, parse_path,
                        parse_predicate, parse_selection, terms_of)
from .size import fragment_by_size, simplex_fragment
from .stats import (FragmentShape, StructureHistogram, byte_bucket, coefficient_of_variation,
                    fragment_stats)
from .vertical import check_ref_attr, hybrid_fragment, vertical_fragment

__all__ = [
    'Conjunction',
    'Fragment',
    'FragmentEntry',
    'FragmentModel',
    'FragmentShape',
    'LabelPredicate',
    'Link',
    'Manifest',
    'Op',
    'PathSelector',
    'Selection',
    'SimplePredicate',
    'SizeConstraints',
    'StructureHistogram',
    'as_decimal',
    'build_manifest',
    'byte_bucket',
    'check_ref_attr',
    'coefficient_of_variation',
    'compare',
    'container_fragment',
    'evaluate_predicate',
    'format_path',
    'fragment_by_size',
    'fragment_file_name',
    'fragment_stats',
    'horizontal_fragment',
    'horizontal_quantile_fragment',
    'horizontal_range_fragment',
    'hybrid_fragment',
    'leaves',
    'parse_op',
    'parse_path',
    'parse_predicate',
    'parse_selection',
    'predicate_guards',
    'rooted_fragment',
    'simplex_fragment',
    'terms_of',
    'vertical_fragment',
]
