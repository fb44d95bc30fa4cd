"""Formatos JSON: PointSetFile, relatório de análise e certificados

Nos relatórios todo inteiro vira string decimal e toda fração vira
"num/den", então energias acima de 2^53 atravessam consumidores JSON
ingênuos sem perda. A saída usa sort_keys e indent fixos: mesma entrada,
mesmos bytes.
"""
import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict

from znfal.classify import AffineSummary, StructureCertificate
from znfal.config import parse_fraction
from znfal.exceptions import PointSetFormatError
from znfal.pointset import PointSet

POINTSET_VERSION = '1'
REPORT_SCHEMA = 'znfal.report/1'


def fraction_str(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def render(value: Any) -> Any:
    """Converte recursivamente para tipos JSON exatos (int -> str, Fraction -> 'a/b')."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return fraction_str(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, dict):
        return {str(k): render(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [render(v) for v in value]
    if hasattr(value, 'item'):
        return render(value.item())
    raise TypeError(f"Valor não serializável: {value!r}")


def dumps(payload: Dict[str, Any]) -> str:
    return json.dumps(render(payload), indent=2, sort_keys=True) + "\n"


def _parse_int(value, what):
    if isinstance(value, bool) or isinstance(value, float):
        raise PointSetFormatError(f"{what} deve ser inteiro, recebido {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and value.strip().lstrip('-').isdigit():
        return int(value)
    raise PointSetFormatError(f"{what} deve ser inteiro, recebido {value!r}")


def pointset_payload(E: PointSet) -> Dict[str, Any]:
    return {
        'version': POINTSET_VERSION,
        'n': E.n,
        'd': E.d,
        'points': [list(point) for point in E.points],
    }


def dump_pointset(E: PointSet) -> str:
    return json.dumps(pointset_payload(E), sort_keys=True) + "\n"


def input_digest(E: PointSet) -> str:
    """sha256 da forma canônica do conjunto."""
    canonical = json.dumps(pointset_payload(E), sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


def parse_pointset(text: str) -> PointSet:
    """
    Lê um PointSetFile; coordenadas podem ser inteiros ou strings decimais

    Raises:
        PointSetFormatError: JSON inválido, campos ausentes ou versão desconhecida
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise PointSetFormatError(f"Erro ao parsear JSON: {e}") from e
    if not isinstance(data, dict):
        raise PointSetFormatError("PointSetFile deve ser um objeto JSON")
    for key in ('version', 'n', 'd', 'points'):
        if key not in data:
            raise PointSetFormatError(f"Campo obrigatório ausente: '{key}'")
    if str(data['version']) != POINTSET_VERSION:
        raise PointSetFormatError(f"Versão de PointSetFile não suportada: {data['version']!r}")
    n = _parse_int(data['n'], 'n')
    d = _parse_int(data['d'], 'd')
    if not isinstance(data['points'], list):
        raise PointSetFormatError("'points' deve ser uma lista")
    points = []
    for point in data['points']:
        if not isinstance(point, list):
            raise PointSetFormatError(f"Ponto inválido: {point!r}")
        points.append(tuple(_parse_int(c, 'coordenada') for c in point))
    return PointSet.build(n, d, points)


def load_pointset(path) -> PointSet:
    path = Path(path)
    if not path.exists():
        raise PointSetFormatError(f"Arquivo não encontrado: {path}")
    return parse_pointset(path.read_text(encoding='utf-8'))


def affine_summary_to_dict(summary: AffineSummary) -> Dict[str, Any]:
    return {
        'q': summary.q,
        'p': summary.p,
        'dim': summary.subspace_dim,
        'count': summary.count,
        'size': summary.size,
        'fraction': summary.fraction,
        'offset': list(summary.offset),
        'basis': [list(row) for row in summary.basis],
        'truncated': summary.truncated,
        'evaluations': summary.evaluations,
    }


def affine_summary_from_dict(data: Dict[str, Any]) -> AffineSummary:
    return AffineSummary(
        q=int(data['q']),
        p=int(data['p']),
        subspace_dim=int(data['dim']),
        count=int(data['count']),
        size=int(data['size']),
        offset=tuple(int(c) for c in data['offset']),
        basis=tuple(tuple(int(c) for c in row) for row in data['basis']),
        truncated=bool(data['truncated']),
        evaluations=int(data['evaluations']),
    )


def certificate_to_dict(certificate: StructureCertificate) -> Dict[str, Any]:
    return {
        'n': certificate.n,
        'd': certificate.d,
        'K': certificate.K,
        'm': certificate.m,
        'v': list(certificate.v),
        'alpha': certificate.alpha,
        'support_size': certificate.support_size,
        'isotropy_k': certificate.isotropy_divisor,
        'local_summaries': {
            q: affine_summary_to_dict(summary) for q, summary in certificate.local_summaries.items()
        },
    }


def certificate_from_dict(data: Dict[str, Any]) -> StructureCertificate:
    """
    Inverso de render(certificate_to_dict(c))

    Raises:
        PointSetFormatError: campos ausentes ou m inconsistente com n/K
    """
    try:
        n, K = int(data['n']), int(data['K'])
        if int(data['m']) * K != n:
            raise PointSetFormatError(f"m={data['m']} inconsistente com n={n}, K={K}")
        isotropy = data.get('isotropy_k')
        return StructureCertificate(
            n=n,
            d=int(data['d']),
            K=K,
            v=tuple(int(c) for c in data['v']),
            alpha=parse_fraction(data['alpha']),
            support_size=int(data['support_size']),
            isotropy_divisor=int(isotropy) if isotropy is not None else None,
            local_summaries={
                int(q): affine_summary_from_dict(summary)
                for q, summary in data.get('local_summaries', {}).items()
            },
        )
    except (KeyError, TypeError) as e:
        raise PointSetFormatError(f"Certificado inválido: {e}") from e


def vanishing_to_dict(basis) -> Dict[str, Any]:
    return {
        'D': basis.D,
        'complete': basis.complete,
        'count': len(basis.polynomials),
        'polynomials': [
            [[list(exponent), coefficient] for exponent, coefficient in F.to_pairs()]
            for F in basis.polynomials
        ],
        'warnings': list(basis.warnings),
        'size_flag': basis.size_flag,
        'local_flags': basis.local_flags,
    }


def report_payload(command: str, flags: Dict[str, Any], E: PointSet, **sections) -> Dict[str, Any]:
    """
    Envelope comum: schema, comando, flags, resumo da entrada e seções

    'threads' e 'report' nunca entram nas flags: o conteúdo não depende deles.
    """
    payload = {
        'schema': REPORT_SCHEMA,
        'command': command,
        'flags': {k: v for k, v in sorted(flags.items()) if k not in ('threads', 'report')},
        'input': {'digest': input_digest(E), 'n': E.n, 'd': E.d, 'size': E.size},
        'partial': False,
    }
    payload.update({k: v for k, v in sections.items() if v is not None})
    return payload


def parse_report(text: str) -> Dict[str, Any]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise PointSetFormatError(f"Erro ao parsear relatório: {e}") from e
    if not isinstance(data, dict) or data.get('schema') != REPORT_SCHEMA:
        raise PointSetFormatError("Relatório sem schema reconhecido")
    return data


def write_text(path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding='utf-8')
