"""Computations with finite generalized linear Reedy categories over exact fields."""
from .linalg import Field, QQ, Mat, Subspace, QuotientSpace, NoSolution
from .lincat import ConcreteCat, LinCat, linearize
from .reps import LEFT, RIGHT, Rep, RepMap, hom_reps, representable, tensor
from .reedy import ReedyStructure
from .zoo import zoo

__all__ = ["Field", "QQ", "Mat", "Subspace", "QuotientSpace", "NoSolution", "ConcreteCat", "LinCat",
           "linearize", "LEFT", "RIGHT", "Rep", "RepMap", "hom_reps", "representable", "tensor",
           "ReedyStructure", "zoo"]
__version__ = "0.1.0"
