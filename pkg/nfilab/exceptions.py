"""
Erreurs de NFILAB.

Chaque classe porte le code de sortie utilisé par la CLI.
"""


class NfiLabError(Exception):
    """Erreur de base du paquet."""

    exit_code = 1
    kind = "error"


class InvalidInstanceError(NfiLabError):
    """Instance invalide (s == t, boucle, extrémité inconnue, k hors bornes...)."""

    exit_code = 7
    kind = "invalid-instance"


class InvalidCutError(NfiLabError):
    """Ensemble de sommets qui ne définit pas une coupe propre."""

    exit_code = 7
    kind = "invalid-cut"


class MalformedInputError(NfiLabError):
    """Entrée mal formée : identifiant d'arête inconnu, arête interdite..."""

    exit_code = 7
    kind = "malformed-input"


class InfeasibleError(NfiLabError):
    """Aucune solution ne respecte le budget ou le seuil demandé."""

    exit_code = 4
    kind = "infeasible"


class SizeGuardError(NfiLabError):
    """Instance trop grande pour une énumération exhaustive."""

    exit_code = 5
    kind = "size-guard"


class ParseError(NfiLabError):
    """Erreur de lecture d'un fichier d'instance."""

    exit_code = 3
    kind = "parse-error"

    def __init__(self, message: str, line_number: int = 0):
        self.line_number = line_number
        if line_number:
            message = f"ligne {line_number}: {message}"
        super().__init__(message)


class GenerationError(NfiLabError):
    """Combinaison de paramètres impossible pour le générateur."""

    exit_code = 7
    kind = "generation-error"


class VerificationError(NfiLabError):
    """Un rapport ne correspond pas à sa réévaluation."""

    exit_code = 6
    kind = "verification-failure"


class OracleDisagreementError(NfiLabError):
    """Les deux oracles exacts ne renvoient pas le même optimum."""

    exit_code = 1
    kind = "oracle-disagreement"
