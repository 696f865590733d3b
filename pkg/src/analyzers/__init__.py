from .cuntz_analyzer import CuntzAnalyzer, CuntzWindowReport, RelationVerdict
from .net_analyzer import NetAnalyzer
from .representation_analyzer import RepresentationAnalyzer
from .semigroup_analyzer import SemigroupAnalyzer

__all__ = [
    'CuntzAnalyzer',
    'CuntzWindowReport',
    'RelationVerdict',
    'NetAnalyzer',
    'RepresentationAnalyzer',
    'SemigroupAnalyzer',
]
