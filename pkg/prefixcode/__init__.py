"""prefixcode: minimum-cost prefix codes for equiprobable words with unequal letter costs."""

__version__ = "1.0.0"

from .codec import Code, assign_codewords, decode, encode
from .engine import CodeTree, Solution, compute_optimal, materialize_tree
from .errors import PrefixCodeError
from .model import Instance, NodeRef, node_compare, validate_instance
from .oracle import binary_reference, brute_force_optimal

__all__ = [
    'Code', 'CodeTree', 'Instance', 'NodeRef', 'PrefixCodeError', 'Solution',
    'assign_codewords', 'binary_reference', 'brute_force_optimal',
    'compute_optimal', 'decode', 'encode', 'materialize_tree', 'node_compare',
    'validate_instance',
]
