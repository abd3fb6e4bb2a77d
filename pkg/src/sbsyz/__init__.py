"""Strings, bands, syzygies and projective dimensions over special biserial algebras."""

from .algebra import Algebra, PathClass, ProjectiveShape, build_algebra, normal_form, syllables
from .dsl import Binomial, Presentation, ZeroPath, load_presentation, parse_presentation, render
from .errors import (AlgebraError, DSLSyntaxError, InconsistentRelations, NotAdmissible,
                     NotSpecialBiserial, SbsyzError, WordError, WordSyntaxError)
from .family import build_lambda
from .findim import enumerate_bands, enumerate_strings, findim_scan, verify_claim, witness_module
from .quiver import Arrow, Path, Quiver, compose, trivial
from .syzygy import INF, PdimEngine, PdimVerdict, SyzygyResult, pdim, syzygy_band, syzygy_periodic, syzygy_string
from .words import (BandDatum, Word, canonical_band, check_band, check_word, canonical_string, inverse, parse_band, parse_word,
                    serialize_word, validate_band, validate_word)

__version__ = "0.1.0"

__all__ = [
    "Algebra", "PathClass", "ProjectiveShape", "build_algebra", "normal_form", "syllables",
    "Binomial", "Presentation", "ZeroPath", "load_presentation", "parse_presentation", "render",
    "AlgebraError", "DSLSyntaxError", "InconsistentRelations", "NotAdmissible",
    "NotSpecialBiserial", "SbsyzError", "WordError", "WordSyntaxError",
    "build_lambda", "enumerate_bands", "enumerate_strings", "findim_scan", "verify_claim",
    "witness_module", "Arrow", "Path", "Quiver", "compose", "trivial",
    "INF", "PdimEngine", "PdimVerdict", "SyzygyResult", "pdim", "syzygy_band", "syzygy_periodic",
    "syzygy_string", "BandDatum", "Word", "canonical_band", "check_band", "check_word", "canonical_string", "inverse",
    "parse_band", "parse_word", "serialize_word", "validate_band", "validate_word",
]
