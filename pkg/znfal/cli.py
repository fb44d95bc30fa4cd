#!/usr/bin/env python3
"""
znfal CLI - estatísticas de distâncias quadráticas em Z_n^d
"""

import sys
import click

from znfal import __version__
from znfal import history
from znfal.classify import classify as classify_set
from znfal.classify import local_structure, nilpotent_layer, peel
from znfal.config import Deadline, check_budget, load_config
from znfal.constructions import (
    SkewMatrix,
    appendix_b_set,
    default_skew_matrix,
    example_2_3,
    random_product_set,
    random_set,
    random_skew_matrix,
    submodule_coset,
)
from znfal.crt_lifting import (
    fiber_stats,
    holder_check,
    local_distance_diagnostics,
    local_energy_ratios,
    pigeonhole_check,
    projections,
)
from znfal.energy import (
    cauchy_schwarz_check,
    distance_profile,
    energy_shells,
    mixed_cross_terms,
    near_extremality_report,
)
from znfal.exceptions import BudgetExceededError, InvariantViolationError, ZnFalException
from znfal.logger import setup_logger
from znfal.reports import (
    affine_summary_to_dict,
    certificate_to_dict,
    dump_pointset,
    dumps,
    input_digest,
    load_pointset,
    report_payload,
    vanishing_to_dict,
    write_text,
)
from znfal.rigidity import (
    annihilator_poly,
    b_construction_identity_checks,
    ideal_identity_check,
    psi_vanishing_check,
    schwartz_zippel_report,
    vanishing_space,
)
from znfal.system_checks import SystemCheckError, verify_system_requirements
from znfal.verification import LEMMAS

EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_INVARIANT = 4


def budget_options(func):
    """Flags de orçamento compartilhadas pelos comandos de análise."""
    options = [
        click.option("--max-points", type=int, default=None, help="Limite de |E| nos laços de pares (padrão 5000)"),
        click.option("--max-modulus", type=int, default=None, help="Limite de n (padrão 10^6)"),
        click.option("--monomial-budget", type=int, default=None, help="Limite de monômios (padrão 5000)"),
        click.option("--affine-budget", type=int, default=None, help="Limite de avaliações da busca afim (padrão 10^8)"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _config(ctx, thresholds=None, budgets=None, run=None):
    run = dict(run or {})
    run.setdefault("history_db", ctx.obj.get("history_db"))
    options = {"thresholds": thresholds or {}, "budgets": budgets or {}, "run": run}
    return load_config(options, ctx.obj["logger"])


def _check_input(E, cfg):
    check_budget("max_modulus", E.n, cfg["budgets"]["max_modulus"])
    check_budget("max_points", E.size, cfg["budgets"]["max_points"])


def _emit(text, report_path, logger):
    if report_path:
        write_text(report_path, text)
        logger.info(f"Relatório gravado em {report_path}")
    else:
        click.echo(text, nl=False)


def _execute(ctx, cfg, command, action):
    """
    Executa action mapeando exceções para códigos de saída e registrando
    a execução no histórico quando configurado.

    action devolve (código, digest da entrada ou None).
    """
    logger = ctx.obj["logger"]
    db = cfg["run"]["history_db"]
    flags = {k: v for k, v in ctx.params.items() if k != "threads"}
    run_id = history.record_run(command, flags, db_path=db) if db else None

    digest = None
    try:
        code, digest = action()
    except BudgetExceededError as e:
        logger.error(f"✗ Orçamento excedido: {e}")
        code = EXIT_BUDGET
    except InvariantViolationError as e:
        logger.error(f"✗ Violação de invariante: {e}")
        code = EXIT_INVARIANT
    except ZnFalException as e:
        logger.error(f"✗ Entrada inválida: {e}")
        code = EXIT_INPUT

    if run_id is not None:
        status = {0: "ok", EXIT_INPUT: "input_error", EXIT_BUDGET: "budget", EXIT_INVARIANT: "invariant"}
        history.update_run(run_id, status=status.get(code, "failed"), input_digest=digest,
                           exit_code=code, db_path=db)
    if code:
        sys.exit(code)


@click.group()
@click.version_option(version=__version__, prog_name="znfal")
@click.option(
    "-v", "--verbose", is_flag=True, help="Modo verbose (mostra mensagens DEBUG)"
)
@click.option(
    "--history-db",
    type=click.Path(dir_okay=False),
    default=None,
    help="Banco sqlite para registrar execuções (ou ZNFAL_HISTORY_DB)",
)
@click.pass_context
def cli(ctx, verbose, history_db):
    """
    zn-falconer - estatísticas de distâncias quadráticas em Z_n^d

    Energia de incidência, cascas por divisor, levantamento CRT,
    certificados de estrutura e rigidez polinomial, tudo em aritmética
    exata.
    """
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    ctx.obj["logger"] = setup_logger(verbose)
    ctx.obj["history_db"] = history_db


def _energy_section(E, cfg, threads):
    report = near_extremality_report(E, cfg["thresholds"]["K"], cfg["thresholds"]["C"], threads)
    return {
        "total": report.energy,
        "nontrivial": report.energy - report.size ** 2,
        "ratio": report.energy_ratio,
        "distance_density": report.distance_density,
        "size_regime_ratio": report.size_regime_ratio,
        "size_exponent": report.size_exponent_decimal(),
        "K": report.K,
        "C": report.C,
        "energy_extremal": report.energy_extremal,
        "distance_collapsed": report.distance_collapsed,
        "near_extremal": report.near_extremal,
        "cauchy_schwarz": cauchy_schwarz_check(E, threads),
    }


def _shells_section(E, threads, energy_total):
    decomposition = energy_shells(E, threads)
    if decomposition.total != energy_total or decomposition.total != decomposition.shell_sum + decomposition.mixed:
        raise InvariantViolationError("Soma das cascas + termo misto difere da energia")
    if decomposition.mixed != mixed_cross_terms(decomposition):
        raise InvariantViolationError("Termo misto difere da soma dos termos cruzados")
    return {
        "by_divisor": decomposition.shells,
        "mixed": decomposition.mixed,
        "total": decomposition.total,
    }


def _local_section(E, cfg, threads):
    ratios = local_energy_ratios(E, threads)
    diagnostics = local_distance_diagnostics(E, cfg["thresholds"]["C"], threads)
    components = {}
    for q, local in projections(E).items():
        fibers = fiber_stats(E, q)
        components[q] = {
            "size": local.size,
            "ratio": ratios.ratios[q],
            "fiber_M": fibers.M,
            "fiber_histogram": fibers.histogram,
            "uniform_core_fraction": fibers.uniform_core_fraction,
            **diagnostics.components[q],
        }
    return {
        "components": components,
        "global_ratio": ratios.global_ratio,
        "distance_count": diagnostics.distance_count,
        "heavy_product": diagnostics.heavy_product,
        "bound_ratio": diagnostics.bound_ratio,
        "holder": holder_check(E, threads),
        "pigeonhole": pigeonhole_check(ratios, cfg["thresholds"]["K"]),
    }


def _classification_section(E, cfg, threads):
    thresholds, budgets = cfg["thresholds"], cfg["budgets"]
    certificate = classify_set(
        E,
        alpha_min=thresholds["alpha_min"],
        require_isotropy=thresholds["require_isotropy"],
        affine_threshold=thresholds["affine_threshold"],
        affine_budget=budgets["affine_budget"],
        threads=threads,
    )
    if certificate is None:
        summaries = local_structure(E, threshold=thresholds["affine_threshold"], budget=budgets["affine_budget"])
        section = {
            "result": "unstructured",
            "local_summaries": {q: affine_summary_to_dict(s) for q, s in summaries.items()},
        }
    else:
        certificate.validate(E)
        section = {"result": "structured", "certificate": certificate_to_dict(certificate)}
    factorization = E.modulus.factorization
    if len(factorization) == 1 and factorization[0][1] == 2:
        layer = nilpotent_layer(E)
        section["nilpotent_layer"] = {
            "p": layer.p,
            "residue_count": layer.residue_count,
            "bijective": layer.bijective,
            "linear": layer.linear,
            "matrix": layer.matrix,
            "skew": layer.skew,
        }
    return section


@cli.command()
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--shells", is_flag=True, help="Inclui a decomposição em cascas por divisor")
@click.option("--local", "local_", is_flag=True, help="Inclui razões locais, fibras e Delta(E_q)")
@click.option("--classify", "with_classify", is_flag=True, help="Inclui o certificado de estrutura")
@click.option("--vanish-degree", type=int, default=None, help="Inclui o espaço de anulamento até o grau D")
@click.option("--K", "K", default=None, help="Limiar da razão de energia (ex.: 2 ou 5/2)")
@click.option("--C", "C", default=None, help="Limiar da densidade de distâncias (ex.: 1/10)")
@click.option("--alpha-min", default=None, help="Concentração mínima do classificador (ex.: 1/2)")
@click.option("-t", "--threads", type=int, default=None, help="Partições paralelas do laço de pares")
@click.option("--report", type=click.Path(dir_okay=False), default=None, help="Grava o relatório JSON neste caminho")
@budget_options
@click.pass_context
def analyze(ctx, input_file, shells, local_, with_classify, vanish_degree, K, C, alpha_min,
            threads, report, max_points, max_modulus, monomial_budget, affine_budget):
    """
    Analisa um PointSetFile: Delta(E), energia, cascas e diagnósticos.

    Exemplo:

        znfal analyze example.json --shells --local

        znfal analyze appendix-b.json --classify --vanish-degree 2 --threads 4
    """
    logger = ctx.obj["logger"]
    cfg = _config(
        ctx,
        thresholds={"K": K, "C": C, "alpha_min": alpha_min},
        budgets={"max_points": max_points, "max_modulus": max_modulus,
                 "monomial_budget": monomial_budget, "affine_budget": affine_budget},
        run={"threads": threads, "report": report},
    )
    threads = cfg["run"]["threads"]

    def action():
        deadline = Deadline(cfg["budgets"]["budget_ms"])
        E = load_pointset(input_file)
        _check_input(E, cfg)
        logger.info(f"Analisando |E|={E.size} em Z_{E.n}^{E.d}")

        profile = distance_profile(E, threads)
        sections = {
            "distance": {
                "count": profile.distance_count,
                "set": list(profile.support),
                "profile": {t: profile.nu[t] for t in profile.support},
            },
        }
        stages = [("energy", lambda: _energy_section(E, cfg, threads))]
        if shells:
            stages.append(("shells", lambda: _shells_section(E, threads, sections["energy"]["total"])))
        if local_:
            stages.append(("local", lambda: _local_section(E, cfg, threads)))
        if with_classify:
            stages.append(("classification", lambda: _classification_section(E, cfg, threads)))
        if vanish_degree is not None:
            stages.append(("vanishing", lambda: vanishing_to_dict(
                vanishing_space(E, vanish_degree, cfg["budgets"]["monomial_budget"], deadline))))

        partial = False
        for name, stage in stages:
            if deadline.expired():
                logger.warning(f"Prazo de {deadline.budget_ms} ms esgotado antes de '{name}'")
                partial = True
                break
            sections[name] = stage()
            logger.debug(f"Etapa '{name}' concluída em {deadline.elapsed_ms()} ms")

        payload = report_payload("analyze", ctx.params, E, **sections)
        payload["partial"] = partial or (
            "vanishing" in sections and not sections["vanishing"]["complete"]
        )
        _emit(dumps(payload), report, logger)
        return (EXIT_BUDGET if payload["partial"] else 0), input_digest(E)

    _execute(ctx, cfg, "analyze", action)


def _parse_vector(text):
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError as e:
        raise click.BadParameter(f"Vetor inválido: {text!r} (use inteiros separados por vírgula)") from e


def _parse_matrix(text):
    """'0,1;2,0' -> ((0, 1), (2, 0))"""
    return tuple(_parse_vector(row) for row in text.split(";"))


@cli.command()
@click.argument("kind", type=click.Choice(["example-2-3", "appendix-b", "coset", "random", "product"]))
@click.option("--n", "n", type=int, default=None, help="Módulo (coset, random, product)")
@click.option("--d", "d", type=int, default=None, help="Dimensão")
@click.option("--p", "p", type=int, default=None, help="Primo ímpar (appendix-b)")
@click.option("--matrix", default=None, help="Matriz antissimétrica, linhas separadas por ';' (appendix-b)")
@click.option("--skew-seed", type=int, default=None, help="Sorteia a matriz antissimétrica com esta seed (appendix-b)")
@click.option("--K", "K", type=int, default=None, help="Divisor K de n (coset)")
@click.option("--v", "v", default=None, help="Representante do coset, ex.: 0,0")
@click.option("--size", type=int, default=None, help="Número de pontos (random)")
@click.option("--sizes", default=None, help="Tamanhos por componente primária, ex.: 2,3 (product)")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed (random, product)")
@click.option("-o", "--out", type=click.Path(dir_okay=False), default=None, help="Arquivo de saída")
@click.pass_context
def construct(ctx, kind, n, d, p, matrix, skew_seed, K, v, size, sizes, seed, out):
    """
    Gera um PointSetFile determinístico.

    Exemplo:

        znfal construct appendix-b --p 3 --d 2 --out b.json

        znfal construct coset --n 6 --d 2 --K 2 --v 0,0
    """
    logger = ctx.obj["logger"]
    cfg = _config(ctx)

    def require(**values):
        missing = [name for name, value in values.items() if value is None]
        if missing:
            raise click.UsageError(f"'{kind}' exige: {', '.join('--' + m for m in missing)}")

    def action():
        if kind == "example-2-3":
            E = example_2_3()
        elif kind == "appendix-b":
            require(p=p, d=d)
            if matrix is not None:
                A = SkewMatrix(p, d, _parse_matrix(matrix))
            elif skew_seed is not None:
                A = random_skew_matrix(p, d, skew_seed)
            else:
                A = None
            E = appendix_b_set(p, d, A)
        elif kind == "coset":
            require(n=n, d=d, K=K)
            E = submodule_coset(n, d, K, _parse_vector(v) if v else (0,) * d)
        elif kind == "random":
            require(n=n, d=d, size=size)
            E = random_set(n, d, size, seed)
        else:
            require(n=n, d=d, sizes=sizes)
            E, _ = random_product_set(n, d, list(_parse_vector(sizes)), seed)
        logger.info(f"Construído '{kind}': |E|={E.size} em Z_{E.n}^{E.d}")
        _emit(dump_pointset(E), out, logger)
        return 0, input_digest(E)

    _execute(ctx, cfg, "construct", action)


@cli.command(name="classify")
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--alpha-min", default=None, help="Concentração mínima (padrão 1/2)")
@click.option("--no-isotropy", is_flag=True, help="Aceita cosets sem divisor de isotropia")
@click.option("--peel", "peel_", is_flag=True, help="Extrai certificados gulosamente até esgotar")
@click.option("--local", "local_", is_flag=True, help="Inclui resumos afins por componente")
@click.option("--max-dim", type=int, default=None, help="Dimensão máxima da busca afim (padrão d-1)")
@click.option("--affine-threshold", default=None, help="Fração alvo da busca afim (padrão 9/10)")
@click.option("-t", "--threads", type=int, default=None, help="Avalia divisores em paralelo")
@click.option("--report", type=click.Path(dir_okay=False), default=None, help="Grava o resultado JSON neste caminho")
@budget_options
@click.pass_context
def classify_command(ctx, input_file, alpha_min, no_isotropy, peel_, local_, max_dim, affine_threshold,
                     threads, report, max_points, max_modulus, monomial_budget, affine_budget):
    """
    Emite certificados de estrutura (K, v, alpha, k) ou 'unstructured'.

    Exemplo:

        znfal classify coset.json

        znfal classify mixed.json --peel --local
    """
    logger = ctx.obj["logger"]
    cfg = _config(
        ctx,
        thresholds={"alpha_min": alpha_min, "affine_threshold": affine_threshold,
                    "require_isotropy": False if no_isotropy else None},
        budgets={"max_points": max_points, "max_modulus": max_modulus,
                 "monomial_budget": monomial_budget, "affine_budget": affine_budget},
        run={"threads": threads, "report": report},
    )
    thresholds, budgets = cfg["thresholds"], cfg["budgets"]

    def action():
        E = load_pointset(input_file)
        _check_input(E, cfg)
        options = dict(local=local_, max_dim=max_dim, affine_threshold=thresholds["affine_threshold"],
                       affine_budget=budgets["affine_budget"], threads=cfg["run"]["threads"])
        if peel_:
            certificates, rest = peel(E, thresholds["alpha_min"], thresholds["require_isotropy"], **options)
            residual = rest.size
        else:
            certificate = classify_set(E, thresholds["alpha_min"], thresholds["require_isotropy"], **options)
            certificates = [certificate] if certificate else []
            residual = None
            if certificate is not None:
                certificate.validate(E)

        section = {
            "result": "structured" if certificates else "unstructured",
            "certificates": [certificate_to_dict(c) for c in certificates],
        }
        if residual is not None:
            section["residual_size"] = residual
        if local_ and not certificates:
            summaries = local_structure(E, max_dim, thresholds["affine_threshold"], budgets["affine_budget"])
            section["local_summaries"] = {q: affine_summary_to_dict(s) for q, s in summaries.items()}
        logger.info(f"Resultado: {section['result']} ({len(certificates)} certificado(s))")
        _emit(dumps(report_payload("classify", ctx.params, E, classification=section)), report, logger)
        return 0, input_digest(E)

    _execute(ctx, cfg, "classify", action)


@cli.group()
@click.pass_context
def pit(ctx):
    """Polinômios anuladores, espaço de anulamento e identidades da construção skew."""


@pit.command(name="psi-check")
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--report", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def psi_check(ctx, input_file, report):
    """
    Verifica Q(||x - y||^2) = 0 mod n em todo par, Q = anulador de Delta(E).

    Exemplo:

        znfal pit psi-check example.json
    """
    logger = ctx.obj["logger"]
    cfg = _config(ctx)

    def action():
        E = load_pointset(input_file)
        _check_input(E, cfg)
        profile = distance_profile(E)
        Q = annihilator_poly(profile.support, E.modulus)
        holds = psi_vanishing_check(E)
        section = {"holds": holds, "degree": Q.degree, "distance_count": profile.distance_count}
        _emit(dumps(report_payload("pit psi-check", ctx.params, E, psi=section)), report, logger)
        if not holds:
            raise InvariantViolationError("Psi não se anula em E x E")
        return 0, input_digest(E)

    _execute(ctx, cfg, "pit psi-check", action)


@pit.command()
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--degree", "D", type=int, required=True, help="Grau total máximo D")
@click.option("--monomial-budget", type=int, default=None, help="Limite de monômios (padrão 5000)")
@click.option("--report", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def vanish(ctx, input_file, D, monomial_budget, report):
    """
    Calcula todos os polinômios de grau <= D que se anulam em E mod n.

    Exemplo:

        znfal pit vanish b.json --degree 2
    """
    logger = ctx.obj["logger"]
    cfg = _config(ctx, budgets={"monomial_budget": monomial_budget})

    def action():
        deadline = Deadline(cfg["budgets"]["budget_ms"])
        E = load_pointset(input_file)
        _check_input(E, cfg)
        basis = vanishing_space(E, D, cfg["budgets"]["monomial_budget"], deadline)
        payload = report_payload("pit vanish", ctx.params, E, vanishing=vanishing_to_dict(basis))
        payload["partial"] = not basis.complete
        logger.info(f"{len(basis.polynomials)} polinômio(s) na base (grau <= {D})")
        _emit(dumps(payload), report, logger)
        return (0 if basis.complete else EXIT_BUDGET), input_digest(E)

    _execute(ctx, cfg, "pit vanish", action)


@pit.command(name="b-checks")
@click.option("--p", "p", type=int, required=True, help="Primo ímpar")
@click.option("--d", "d", type=int, required=True, help="Dimensão")
@click.option("--matrix", default=None, help="Matriz A, linhas separadas por ';' (padrão [[0,1],[p-1,0]])")
@click.option("--samples", type=int, default=10_000, show_default=True, help="Amostras quando não exaustivo")
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_context
def b_checks(ctx, p, d, matrix, samples, seed):
    """
    Verifica antissimetria, <v, Av> = 0 e ||X - Y||^2 = ||x - y||^2 mod p^2.

    Exemplo:

        znfal pit b-checks --p 3 --d 2
    """
    cfg = _config(ctx)

    def action():
        if matrix is not None:
            A = _parse_matrix(matrix)
        else:
            A = default_skew_matrix(p, d).entries
        record = b_construction_identity_checks(p, A, cfg["budgets"]["exhaustive_limit"], samples, seed)
        click.echo(dumps(record), nl=False)
        if record["skew"] and not (record["quadratic_form_zero"] and record["cross_term"]):
            raise InvariantViolationError("Matriz antissimétrica falhou nas identidades")
        return 0, None

    _execute(ctx, cfg, "pit b-checks", action)


@pit.command(name="b4-identity")
@click.option("--p", "p", type=int, required=True, help="Primo ímpar")
@click.pass_context
def b4_identity(ctx, p):
    """
    Verifica p Q(t) = 0 mod p^2 para todo t, Q = prod_{a em F_p} (T - a).

    Exemplo:

        znfal pit b4-identity --p 7
    """
    cfg = _config(ctx)

    def action():
        record = ideal_identity_check(p)
        click.echo(dumps(record), nl=False)
        if not record["holds"]:
            raise InvariantViolationError(f"p Q(t) != 0 mod p^2 para p={p}")
        return 0, None

    _execute(ctx, cfg, "pit b4-identity", action)


@pit.command(name="schwartz-zippel")
@click.option("--degree", "D", type=int, required=True)
@click.option("--p", "p", type=int, required=True)
@click.option("--samples", type=int, default=10_000, show_default=True)
@click.option("--arity", type=int, default=2, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_context
def schwartz_zippel(ctx, D, p, samples, arity, seed):
    """
    Fração de zeros de um polinômio aleatório de grau D sobre F_p contra D/p.

    Exemplo:

        znfal pit schwartz-zippel --degree 2 --p 5
    """
    cfg = _config(ctx)

    def action():
        report = schwartz_zippel_report(D, p, samples, seed, arity=arity,
                                        exhaustive_limit=cfg["budgets"]["exhaustive_limit"])
        click.echo(dumps({
            "degree": report.degree,
            "p": report.p,
            "sample_size": report.sample_size,
            "bound": report.bound,
            "observed": report.observed,
            "exact": report.exact,
            "within_slack": report.within_slack,
        }), nl=False)
        return 0, None

    _execute(ctx, cfg, "pit schwartz-zippel", action)


@cli.command()
@click.argument("lemma", type=click.Choice(sorted(LEMMAS)))
@click.option("--trials", type=int, default=100, show_default=True, help="Número de ensaios")
@click.option("--seed", type=int, default=1, show_default=True, help="Seed do gerador")
@click.option("--K", "K", default=None, help="Limiar K (pigeonhole)")
@click.pass_context
def verify(ctx, lemma, trials, seed, K):
    """
    Executa ensaios aleatórios de uma identidade e falha em qualquer violação.

    Exemplo:

        znfal verify product-energy --trials 100 --seed 1

        znfal verify shell-sum --trials 100
    """
    logger = ctx.obj["logger"]
    cfg = _config(ctx, thresholds={"K": K})

    def action():
        deadline = Deadline(cfg["budgets"]["budget_ms"])
        result = LEMMAS[lemma](trials, seed, deadline=deadline, K=cfg["thresholds"]["K"])
        click.echo(dumps({
            "lemma": result.lemma,
            "trials": result.trials,
            "passed": result.passed,
            "skipped": result.skipped,
            "partial": result.partial,
            "failures": result.failures,
        }), nl=False)
        if not result.ok:
            logger.error(f"✗ {lemma}: {len(result.failures)} violação(ões)")
            raise InvariantViolationError(f"{lemma} violado em {len(result.failures)} ensaio(s)")
        logger.info(f"✓ {lemma}: {result.passed}/{result.trials}")
        return (EXIT_BUDGET if result.partial else 0), None

    _execute(ctx, cfg, "verify", action)


@cli.command()
@click.pass_context
def check(ctx):
    """
    Verifica a versão do Python e das bibliotecas click, numpy e sympy.

    Exemplo:

        znfal check
    """
    logger = ctx.obj["logger"]

    logger.info("Verificando dependências...")
    try:
        verify_system_requirements(verbose=True)
        sys.exit(0)
    except SystemCheckError as e:
        logger.error(f"✗ Verificação falhou: {e}")
        sys.exit(1)


@cli.command(name="history")
@click.option("--limit", type=int, default=20, show_default=True, help="Número de execuções")
@click.pass_context
def history_command(ctx, limit):
    """
    Lista as execuções registradas no histórico sqlite.

    Exemplo:

        znfal --history-db runs.db history --limit 5
    """
    cfg = _config(ctx)
    for run in history.list_runs(limit, db_path=cfg["run"]["history_db"]):
        click.echo(
            f"{run['id']:>5}  {run['created_at']}  {run['command']:<20} "
            f"{run['status'] or '-':<12} exit={run['exit_code']}"
        )


@cli.command()
def version():
    """Mostra a versão do znfal."""
    click.echo(f"znfal version {__version__}")


if __name__ == "__main__":
    cli(obj={})
