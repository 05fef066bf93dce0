"""Binary periodic words, their minimal forbidden words and fork structure."""

from .canonical import DefinitionResult, canonical_system, defines, verify_prop_2_4
from .extremal import gen_extremal, verify_extremal
from .forks import ROOT, ForkTable, all_forks, classify, least_fork, verify_lemma_2_8, verify_theorem_3_16
from .sweep import SweepReport, sweep
from .systems import System, from_word, generate, theta, verify_majorization, verify_theorem_4_15
from .words import PeriodicWord, WordError, fibonacci, significance

__all__ = [
    "DefinitionResult", "ForkTable", "PeriodicWord", "ROOT", "SweepReport", "System", "WordError",
    "all_forks", "canonical_system", "classify", "defines", "fibonacci", "from_word", "gen_extremal",
    "generate", "least_fork", "significance", "sweep", "theta", "verify_extremal", "verify_lemma_2_8",
    "verify_majorization", "verify_prop_2_4", "verify_theorem_3_16", "verify_theorem_4_15",
]
