"""
Configuration de NFILAB.

Les gardes d'énumération sont des constantes ; seul le nombre de threads
est lu dans l'environnement (NFILAB_THREADS).
"""

import os
import logging

logger = logging.getLogger(__name__)

# Gardes des oracles exacts
MAX_CUT_VERTICES = 20
MAX_SUBSET_EDGES = 16

# Nombre maximal d'ensembles devinés (nfi_approx avec k > 1, nfi_via_bmstc)
MAX_GUESSES = 250_000


def _read_threads() -> int:
    raw = os.getenv("NFILAB_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        logger.warning("NFILAB_THREADS invalide (%r), valeur 1 utilisée", raw)
        return 1
    if value < 1:
        logger.warning("NFILAB_THREADS doit être >= 1 (reçu %d), valeur 1 utilisée", value)
        return 1
    return value


class Config:
    """Paramètres d'exécution résolus depuis l'environnement."""

    def __init__(self, threads=None):
        self.threads = threads if threads is not None else _read_threads()
        self.max_guesses = MAX_GUESSES

    def __repr__(self):
        return f"Config(threads={self.threads})"


def get_config() -> Config:
    """Retourne une configuration fraîche (relit l'environnement)."""
    return Config()
