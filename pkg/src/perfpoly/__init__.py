"""Perfect and almost perfect homogeneous polytopes, decided by exact linear algebra."""
from __future__ import annotations

from .numberfield import FieldElem, parse
from .polytopes import VertexSet
from .quadrics import Classification, Verdict, classify

__all__ = ["Classification", "FieldElem", "VertexSet", "Verdict", "classify", "parse"]
__version__ = "0.1.0"
