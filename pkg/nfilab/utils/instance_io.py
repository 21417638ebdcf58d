"""
Lecture et écriture des fichiers d'instance.

Format (une ligne par enregistrement, champs séparés par des blancs,
commentaires introduits par #) :

    p nfi|bmstc n m s t budget
    e a b capacite cout          (m lignes, capacité et coût entiers ou "inf")

    p dks n m k
    e a b                        (m lignes)

La sérialisation canonique n'a ni commentaire ni blanc superflu et se termine
par un saut de ligne LF ; son empreinte sha256 identifie l'instance.
"""

import hashlib
import logging
from typing import List, Tuple, Union

from nfilab.exceptions import InvalidInstanceError, ParseError
from nfilab.models.dks import DksInstance
from nfilab.models.extnat import ExtNat
from nfilab.models.graph import Multigraph
from nfilab.models.instance import NfiInstance

logger = logging.getLogger(__name__)

Instance = Union[NfiInstance, DksInstance]

HEADER_FIELDS = {"nfi": 5, "bmstc": 5, "dks": 3}


def _natural(token: str, line_number: int, name: str) -> int:
    if not token.isdigit():
        raise ParseError(f"{name} doit être un entier naturel, reçu {token!r}", line_number)
    return int(token)


def _extnat(token: str, line_number: int, name: str) -> ExtNat:
    try:
        return ExtNat.parse(token)
    except ValueError:
        raise ParseError(f"{name} invalide: {token!r}", line_number) from None


def _records(text: str) -> List[Tuple[int, List[str]]]:
    """Lignes utiles (numéro, champs), commentaires et lignes vides retirés."""
    records = []
    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if content:
            records.append((number, content.split()))
    return records


def parse_instance(text: str) -> Instance:
    """
    Analyse le texte d'un fichier d'instance.

    Returns:
        NfiInstance (nfi ou bmstc) ou DksInstance

    Raises:
        ParseError: ligne mal formée, type inconnu, boucle, instance invalide
    """
    records = _records(text)
    if not records:
        raise ParseError("fichier vide: ligne d'en-tête 'p' attendue")

    header_line, header = records[0]
    if header[0] != "p":
        raise ParseError(f"ligne d'en-tête 'p' attendue, reçu {header[0]!r}", header_line)
    if len(header) < 2 or header[1] not in HEADER_FIELDS:
        kind = header[1] if len(header) > 1 else ""
        raise ParseError(f"type de problème inconnu: {kind!r}", header_line)
    kind = header[1]
    fields = header[2:]
    if len(fields) != HEADER_FIELDS[kind]:
        raise ParseError(
            f"en-tête {kind}: {HEADER_FIELDS[kind]} champs attendus, {len(fields)} reçus",
            header_line,
        )
    n = _natural(fields[0], header_line, "n")
    m = _natural(fields[1], header_line, "m")

    edge_records = records[1:]
    if len(edge_records) != m:
        line = edge_records[m][0] if len(edge_records) > m else header_line
        raise ParseError(f"{m} lignes 'e' attendues, {len(edge_records)} trouvées", line)

    edge_width = 3 if kind == "dks" else 5
    edges = []
    capacities = []
    costs = []
    for number, tokens in edge_records:
        if tokens[0] != "e" or len(tokens) != edge_width:
            raise ParseError(
                f"ligne d'arête 'e' à {edge_width - 1} champs attendue", number
            )
        a = _natural(tokens[1], number, "extrémité")
        b = _natural(tokens[2], number, "extrémité")
        if a == b:
            raise ParseError(f"boucle sur le sommet {a}", number)
        if a >= n or b >= n:
            raise ParseError(f"extrémité hors de 0..{n - 1}", number)
        edges.append((a, b))
        if kind != "dks":
            capacities.append(_extnat(tokens[3], number, "capacité"))
            costs.append(_extnat(tokens[4], number, "coût"))

    try:
        if kind == "dks":
            k = _natural(fields[2], header_line, "k")
            return DksInstance(Multigraph(n, edges), k)
        s = _natural(fields[2], header_line, "s")
        t = _natural(fields[3], header_line, "t")
        budget = _natural(fields[4], header_line, "budget")
        return NfiInstance(
            Multigraph(n, edges), tuple(capacities), tuple(costs), s, t, budget, kind
        )
    except InvalidInstanceError as e:
        raise ParseError(str(e), header_line) from e


def serialize_instance(instance: Instance) -> str:
    """Sérialisation canonique (LF, sans commentaire)."""
    lines = []
    if isinstance(instance, DksInstance):
        h = instance.h
        lines.append(f"p dks {h.vertex_count} {h.edge_count} {instance.k}")
        lines.extend(f"e {a} {b}" for _, (a, b) in h.edges())
    else:
        lines.append(
            f"p {instance.problem} {instance.n} {instance.m} "
            f"{instance.s} {instance.t} {instance.budget}"
        )
        for eid, (a, b) in instance.graph.edges():
            lines.append(f"e {a} {b} {instance.u(eid)} {instance.c(eid)}")
    return "\n".join(lines) + "\n"


def digest(instance: Instance) -> str:
    """Empreinte sha256 (hexadécimale) de la sérialisation canonique."""
    return hashlib.sha256(serialize_instance(instance).encode("utf-8")).hexdigest()


def read_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    logger.debug("lecture de %s (%d octets)", path, len(text))
    return parse_instance(text)


def write_instance(path: str, instance: Instance) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(serialize_instance(instance))
