"""
명령행 인터페이스

하위 명령: gamma, validate, sweep, scenarios, simulate, fit, planck-mass

공통 플래그 --config / --constants / --format / --out 을 받고,
플래그는 설정 파일의 같은 키를 덮어씁니다.
종료 코드는 0 성공, 1 잘못된 입력, 2 내부 수치 오류입니다.
"""

import json
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import click
from loguru import logger
from pydantic import BaseModel

from app.config import configure_logging, get_settings
from app.dependencies import resolve_constants
from app.exceptions import ConfigError, ErrorCodes, classify_exception, error_body
from app.repositories import (
    CsvRepository,
    DatasetRepository,
    EventRepository,
    ScenarioRepository,
    SweepRepository,
    write_json,
    write_text,
)
from app.schemas.common import Channel, SweepChannel
from app.schemas.inference import DatasetMode, FitMode
from app.schemas.regime import RegimeCheck, RegimeReport
from app.schemas.run_config import RunConfig
from app.schemas.sweep import SweepRow
from app.services.decoherence_service import DecoherenceService
from app.services.inference_service import InferenceService
from app.services.regime_service import RegimeValidator
from app.services.simulation_service import EventSimulator
from app.services.sweep_service import SweepService
from physconst import ConstantSet, Dimension, PhysicalConstants, Quantity, __version__


class CommandOutput(BaseModel):
    """JSON 출력 문서: 최종 설정 + 결과"""

    config: RunConfig
    result: Any


# =============================================================================
# 옵션 묶음
# =============================================================================


def common_options(formats: Sequence[str]) -> Callable:
    """--config / --constants / --format / --out (첫 번째 형식이 기본값)"""

    def decorator(func: Callable) -> Callable:
        options = [
            click.option("--config", "config_path", type=click.Path(dir_okay=False), help="JSON 실행 설정 파일"),
            click.option(
                "--constants",
                type=click.Choice([c.value for c in ConstantSet]),
                default=None,
                help="물리 상수 프리셋",
            ),
            click.option(
                "--format", "output_format", type=click.Choice(list(formats)), default=formats[0], show_default=True
            ),
            click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None, help="출력 파일 (기본 stdout)"),
        ]
        for option in reversed(options):
            func = option(func)
        return func

    return decorator


def experiment_options(func: Callable) -> Callable:
    options = [
        click.option("--mass", type=float, default=None, help="질량 m"),
        click.option("--mass-unit", default="kg", show_default=True, help="kg, g, ug, amu, GeV/c2 ..."),
        click.option("--charge", type=float, default=None, help="순전하 q"),
        click.option("--charge-unit", default="C", show_default=True, help="C 또는 e"),
        click.option("--separation", type=float, default=None, help="경로 간격 L (m)"),
        click.option("--duration", type=float, default=None, help="중첩 지속시간 τ (s)"),
        click.option("--beta", type=float, default=None, help="β = v/c (생략 시 L/(cτ))"),
        click.option("--temperature", type=float, default=None, help="온도 T (K)"),
        click.option("--spread", type=float, default=None, help="파속 폭 σ_x (m)"),
        click.option("--c", "c_const", type=float, default=None, help="상수 C"),
        click.option("--c-prime", type=float, default=None, help="상수 C′"),
        click.option("--c-double-prime", type=float, default=None, help="상수 C″"),
        click.option("--tau-ir", type=float, default=None, help="지정 시 로그 적외선 모델 사용"),
        click.option("--beta-rel", type=float, default=None, help="상대론 영역 경계 β_rel"),
        click.option("--em-relativistic", is_flag=True, default=False, help="단파장에서 −α_E C′ β² 사용"),
        click.option("--constituent-mass", type=float, default=None, help="콤프턴 기준 질량 (kg)"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def experiment_overrides(consts: PhysicalConstants, flags: Dict[str, Any]) -> Dict[str, Any]:
    """실험 플래그를 RunConfig.experiment 덮어쓰기 dict 로 변환 (단위 환산 포함)"""
    experiment: Dict[str, Any] = {}
    if flags["mass"] is not None:
        experiment["mass"] = Quantity(flags["mass"], Dimension.MASS, flags["mass_unit"], consts).to("kg").value
    if flags["charge"] is not None:
        experiment["net_charge"] = Quantity(flags["charge"], Dimension.CHARGE, flags["charge_unit"], consts).to("C").value
    for flag, key in (
        ("separation", "separation"),
        ("duration", "duration"),
        ("beta", "beta"),
        ("temperature", "temperature"),
        ("spread", "wavepacket_spread"),
        ("beta_rel", "relativistic_threshold"),
        ("constituent_mass", "constituent_mass"),
    ):
        if flags[flag] is not None:
            experiment[key] = flags[flag]
    if flags["em_relativistic"]:
        experiment["em_relativistic_form"] = True

    model_constants = {
        key: flags[flag]
        for flag, key in (("c_const", "c"), ("c_prime", "c_prime"), ("c_double_prime", "c_double_prime"))
        if flags[flag] is not None
    }
    if flags["tau_ir"] is not None:
        model_constants.update(log_ir_model=True, tau_ir=flags["tau_ir"])
    if model_constants:
        experiment["model_constants"] = model_constants
    return {"experiment": experiment} if experiment else {}


EXPERIMENT_FLAGS = (
    "mass",
    "mass_unit",
    "charge",
    "charge_unit",
    "separation",
    "duration",
    "beta",
    "temperature",
    "spread",
    "c_const",
    "c_prime",
    "c_double_prime",
    "tau_ir",
    "beta_rel",
    "em_relativistic",
    "constituent_mass",
)


def pop_experiment_flags(kwargs: Dict[str, Any]) -> Dict[str, Any]:
    return {name: kwargs.pop(name) for name in EXPERIMENT_FLAGS}


# =============================================================================
# 설정 해석 / 출력
# =============================================================================


def load_run_config(
    config_path: Optional[str],
    constants_flag: Optional[str],
    build_overrides: Callable[[PhysicalConstants], Dict[str, Any]],
) -> Tuple[RunConfig, PhysicalConstants]:
    """
    설정 파일 + 플래그 병합

    상수 집합 우선순위: --constants > 설정 파일 > BREMS_CONSTANTS > codata2018
    """
    base = RunConfig.from_file(config_path)
    requested = ConstantSet(constants_flag) if constants_flag else base.constants
    consts = resolve_constants(get_settings(), requested)

    overrides = build_overrides(consts)
    overrides["constants"] = consts.name
    run_config = base.merged(overrides).with_default_threshold(get_settings().relativistic_threshold)
    logger.info(f"실행 설정: {run_config.model_dump_json(exclude_none=True)}")
    return run_config, consts


def require_experiment(run_config: RunConfig):
    if run_config.experiment is None:
        raise ConfigError(
            "실험 설정이 필요합니다 (--mass --separation --duration --spread 또는 --config)",
            ErrorCodes.CONFIG_INVALID,
        )
    return run_config.experiment


def emit(text: str, out_path: Optional[str]) -> None:
    if out_path:
        write_text(text, out_path)
        logger.info(f"출력 저장: {out_path}")
    else:
        click.echo(text, nl=False)


def emit_json(run_config: RunConfig, result: Any, out_path: Optional[str]) -> None:
    document = CommandOutput(config=run_config, result=result)
    if out_path:
        write_json(document, out_path)
        logger.info(f"출력 저장: {out_path}")
    else:
        click.echo(document.model_dump_json(indent=2) + "\n", nl=False)


def render_regime_table(report: RegimeReport) -> str:
    lines = [f"{'check':<18}{'status':<8}{'margin':>12}  {'required':<9}detail"]
    for check in report.checks:
        status = "OK" if check.satisfied else "FAIL"
        required = "yes" if check.required else "no"
        lines.append(f"{check.name:<18}{status:<8}{check.margin:>12.3e}  {required:<9}{check.detail}")
    lines.append(f"overall_valid: {'true' if report.overall_valid else 'false'} (strictness {report.strictness:g})")
    return "\n".join(lines) + "\n"


# =============================================================================
# 명령
# =============================================================================


@click.group()
@click.version_option(__version__, prog_name="brems")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"]),
    default=None,
    help="로그 레벨 (기본: BREMS_LOG_LEVEL)",
)
def cli(log_level: Optional[str]) -> None:
    """제동복사 결어긋남 계산 도구"""
    configure_logging(log_level or get_settings().log_level)


@cli.command()
@common_options(("json", "csv"))
@experiment_options
def gamma(config_path, constants, output_format, out_path, **kwargs) -> None:
    """단일 점에서 전자기/중력 결어긋남 평가"""
    flags = pop_experiment_flags(kwargs)
    run_config, consts = load_run_config(config_path, constants, lambda c: experiment_overrides(c, flags))
    experiment = require_experiment(run_config)
    report = DecoherenceService(consts).gamma_report(experiment)

    if output_format == "json":
        emit_json(run_config, report, out_path)
        return
    strictness = run_config.validation.strictness or get_settings().strictness
    valid = RegimeValidator(consts, strictness).validate(experiment).overall_valid
    rows = [
        SweepRow(
            m_kg=experiment.mass,
            beta=result.beta,
            channel=result.channel,
            ln_gamma=result.ln_gamma,
            gamma=result.gamma,
            regime=result.regime,
            valid=valid,
        )
        for result in (report.em, report.gravitational)
    ]
    emit(SweepRepository().dumps(rows), out_path)


@cli.command()
@common_options(("table", "json", "csv"))
@experiment_options
@click.option("--strictness", type=float, default=None, help="'훨씬 크다' 판정 배율")
def validate(config_path, constants, output_format, out_path, strictness, **kwargs) -> None:
    """반고전 처리 유효성 검사"""
    flags = pop_experiment_flags(kwargs)

    def overrides(consts: PhysicalConstants) -> Dict[str, Any]:
        result = experiment_overrides(consts, flags)
        result["validation"] = {"strictness": strictness}
        return result

    run_config, consts = load_run_config(config_path, constants, overrides)
    experiment = require_experiment(run_config)
    DecoherenceService(consts).warn_if_beta_inconsistent(experiment)
    factor = run_config.validation.strictness or get_settings().strictness
    report = RegimeValidator(consts, factor).validate(experiment)

    if output_format == "json":
        emit_json(run_config, report, out_path)
    elif output_format == "csv":
        emit(CsvRepository(RegimeCheck).dumps(report.checks), out_path)
    else:
        emit(render_regime_table(report), out_path)


@cli.command()
@common_options(("csv", "json"))
@click.option("--m-min", type=float, default=None, help="최소 질량")
@click.option("--m-max", type=float, default=None, help="최대 질량")
@click.option("--m-points", type=int, default=None)
@click.option("--mass-unit", default="kg", show_default=True)
@click.option("--beta-min", type=float, default=None)
@click.option("--beta-max", type=float, default=None)
@click.option("--beta-points", type=int, default=None)
@click.option("--channel", type=click.Choice([c.value for c in SweepChannel]), default=None)
@click.option("--threshold", "thresholds", type=float, multiple=True, help="|ln Γ| 문턱값 (반복 가능)")
@click.option("--workers", type=int, default=None)
@click.option("--strictness", type=float, default=None)
def sweep(
    config_path,
    constants,
    output_format,
    out_path,
    m_min,
    m_max,
    m_points,
    mass_unit,
    beta_min,
    beta_max,
    beta_points,
    channel,
    thresholds,
    workers,
    strictness,
) -> None:
    """(m, β) 로그 격자 스윕과 문턱 질량 경계"""

    def overrides(consts: PhysicalConstants) -> Dict[str, Any]:
        def kg(value: Optional[float]) -> Optional[float]:
            if value is None:
                return None
            return Quantity(value, Dimension.MASS, mass_unit, consts).to("kg").value

        return {
            "sweep": {
                "m_min": kg(m_min),
                "m_max": kg(m_max),
                "m_points": m_points,
                "beta_min": beta_min,
                "beta_max": beta_max,
                "beta_points": beta_points,
                "channel": channel,
                "target_exponents": list(thresholds) or None,
            },
            "simulation": {"workers": workers},
            "validation": {"strictness": strictness},
        }

    run_config, consts = load_run_config(config_path, constants, overrides)
    settings = get_settings()
    service = SweepService(
        consts,
        run_config.validation.strictness or settings.strictness,
        workers if workers else max(run_config.simulation.workers, settings.workers),
    )
    table = service.run_sweep(run_config.sweep.to_spec(), run_config.template(settings.relativistic_threshold))

    if output_format == "json":
        emit_json(run_config, table, out_path)
    else:
        emit(SweepRepository().dumps(table.rows), out_path)


@cli.command()
@common_options(("csv", "json"))
@click.option("--beta", "betas", type=float, multiple=True, help="β 값 (반복 가능, 기본 1e-9, 0.1, 0.9)")
def scenarios(config_path, constants, output_format, out_path, betas) -> None:
    """기준 질량 시나리오 판정표"""
    run_config, consts = load_run_config(config_path, constants, lambda c: {})
    service = SweepService(consts)
    rows = service.run_scenarios(betas) if betas else service.run_scenarios()

    if output_format == "json":
        emit_json(run_config, rows, out_path)
    else:
        emit(ScenarioRepository().dumps(rows), out_path)


@cli.command()
@common_options(("json", "csv"))
@experiment_options
@click.option("--screen-distance", type=float, default=None, help="스크린 거리 D (m)")
@click.option("--screen-halfwidth", type=float, default=None, help="스크린 반폭 W (m)")
@click.option("--slit-separation", type=float, default=None, help="기본: 경로 간격 L")
@click.option("--fringe-spacing", type=float, default=None, help="무늬 간격 d 직접 지정 (m)")
@click.option("--fringe-phase", type=float, default=None, help="무늬 위상 φ (rad)")
@click.option("--n", "n_events", type=int, default=None, help="이벤트 수")
@click.option("--seed", type=int, default=None)
@click.option("--channel", type=click.Choice([c.value for c in Channel]), default=None)
@click.option("--workers", type=int, default=None)
@click.option("--n-bar", type=float, default=None, help="기대 방출 양자 수 직접 지정")
@click.option("--trough-window", type=float, default=None, help="골 창 반폭 ε (m)")
@click.option("--grid-points", type=int, default=None)
@click.option("--allow-invalid", is_flag=True, default=False, help="유효성 검사 실패 설정도 시뮬레이션")
@click.option("--events-out", type=click.Path(dir_okay=False), default=None, help="이벤트 CSV 경로")
def simulate(config_path, constants, output_format, out_path, events_out, **kwargs) -> None:
    """검출 이벤트 몬테카를로 시뮬레이션"""
    flags = pop_experiment_flags(kwargs)

    def overrides(consts: PhysicalConstants) -> Dict[str, Any]:
        result = experiment_overrides(consts, flags)
        result["geometry"] = {
            "screen_distance": kwargs["screen_distance"],
            "screen_halfwidth": kwargs["screen_halfwidth"],
            "slit_separation": kwargs["slit_separation"],
            "fringe_spacing": kwargs["fringe_spacing"],
            "fringe_phase": kwargs["fringe_phase"],
        }
        result["simulation"] = {
            "n": kwargs["n_events"],
            "seed": kwargs["seed"],
            "channel": kwargs["channel"],
            "workers": kwargs["workers"],
            "n_bar": kwargs["n_bar"],
            "trough_window": kwargs["trough_window"],
            "grid_points": kwargs["grid_points"],
            "allow_invalid": True if kwargs["allow_invalid"] else None,
        }
        return result

    base = RunConfig.from_file(config_path)
    # 슬릿 간격은 따로 주지 않으면 경로 간격 L 을 씀
    if kwargs["slit_separation"] is None and (base.geometry is None or not base.geometry.slit_separation):
        separation = flags["separation"] or (base.experiment.separation if base.experiment else None)
        kwargs["slit_separation"] = separation
    if base.geometry is None and kwargs["screen_distance"] is None:
        raise ConfigError("스크린 기하가 필요합니다 (--screen-distance --screen-halfwidth 또는 --config)", ErrorCodes.CONFIG_INVALID)

    run_config, consts = load_run_config(config_path, constants, overrides)
    experiment = require_experiment(run_config)
    options = run_config.simulation
    settings = get_settings()

    DecoherenceService(consts).warn_if_beta_inconsistent(experiment)
    simulator = EventSimulator(
        consts,
        options.grid_points or settings.grid_points,
        settings.chunk_size,
        run_config.validation.strictness or settings.strictness,
    )
    events, summary = simulator.run(
        experiment,
        run_config.geometry,
        options.n,
        options.seed,
        options.channel,
        max(options.workers, settings.workers),
        options.n_bar,
        options.trough_window,
        options.allow_invalid,
    )

    if events_out:
        EventRepository().write(events, events_out)
        logger.info(f"이벤트 저장: {events_out}")
    if output_format == "json":
        emit_json(run_config, summary, out_path)
    else:
        emit(EventRepository().dumps(events), out_path)


@cli.command()
@common_options(("json",))
@click.option("--data", "data_path", type=click.Path(exists=True, dir_okay=False), default=None, help="데이터셋 CSV (생략 시 생성)")
@click.option("--dataset-mode", type=click.Choice([m.value for m in DatasetMode]), default=None)
@click.option("--mass", "masses", type=float, multiple=True, help="데이터셋 질량 (kg, 반복 가능)")
@click.option("--beta", "betas", type=float, multiple=True, help="데이터셋 β (반복 가능)")
@click.option("--n-events", type=int, default=None, help="몬테카를로 행당 이벤트 수")
@click.option("--seed", type=int, default=None)
@click.option("--fit-mode", type=click.Choice([m.value for m in FitMode]), default=None)
@click.option("--refine", is_flag=True, default=False, help="Γ 공간 비선형 정밀화")
@click.option("--c-double-prime", type=float, default=None, help="알려진 C″ (ħ 추정용)")
@click.option("--channel", type=click.Choice([c.value for c in Channel]), default=None, help="데이터셋 채널")
@click.option("--charge", type=float, default=None, help="데이터셋 순전하 q (전자기 채널용)")
@click.option("--charge-unit", default="C", show_default=True, help="C 또는 e")
@click.option("--workers", type=int, default=None)
@click.option("--dataset-out", type=click.Path(dir_okay=False), default=None, help="생성한 데이터셋 CSV 경로")
def fit(
    config_path,
    constants,
    output_format,
    out_path,
    data_path,
    dataset_mode,
    masses,
    betas,
    n_events,
    seed,
    fit_mode,
    refine,
    c_double_prime,
    channel,
    charge,
    charge_unit,
    workers,
    dataset_out,
) -> None:
    """가시도 데이터셋에서 지수 (a, b) 와 ħ 추정"""

    def overrides(consts: PhysicalConstants) -> Dict[str, Any]:
        coulombs = None
        if charge is not None:
            coulombs = Quantity(charge, Dimension.CHARGE, charge_unit, consts).to("C").value
        return {
            "fit": {
                "masses": list(masses) or None,
                "betas": list(betas) or None,
                "dataset_mode": dataset_mode,
                "n_events": n_events,
                "seed": seed,
                "fit_mode": fit_mode,
                "refine": True if refine else None,
                "c_double_prime": c_double_prime,
                "channel": channel,
                "charge": coulombs,
            },
            "simulation": {"workers": workers},
        }

    run_config, consts = load_run_config(config_path, constants, overrides)
    options = run_config.fit
    settings = get_settings()
    simulator = EventSimulator(consts, settings.grid_points, settings.chunk_size)
    service = InferenceService(consts, simulator)
    repository = DatasetRepository()

    if data_path:
        dataset = repository.read_dataset(data_path, seed=options.seed)
    else:
        template = run_config.template(settings.relativistic_threshold)
        if options.charge is not None:
            template = template.model_copy(update={"net_charge": options.charge})
        dataset = service.generate_dataset(
            options.points(),
            template,
            options.dataset_mode,
            options.n_events,
            options.seed,
            max(run_config.simulation.workers, settings.workers),
            options.channel,
        )
    if dataset_out:
        repository.write_dataset(dataset, dataset_out)

    result = service.fit_power_law(dataset, options.c_double_prime, options.fit_mode, options.refine)
    emit_json(run_config, {"dataset": dataset, "fit": result}, out_path)


@cli.command("planck-mass")
@common_options(("json",))
def planck_mass(config_path, constants, output_format, out_path) -> None:
    """플랑크 질량 (kg, μg, amu, GeV/c²)"""
    run_config, consts = load_run_config(config_path, constants, lambda c: {})
    emit_json(run_config, DecoherenceService(consts).planck_mass_report(), out_path)


def main(argv: Optional[List[str]] = None) -> int:
    """
    CLI 엔트리포인트

    Returns:
        int: 종료 코드 (0 성공, 1 잘못된 입력, 2 내부 수치 오류)
    """
    try:
        cli.main(args=argv, prog_name="brems", standalone_mode=False)
        return 0
    except click.exceptions.Abort:
        return 1
    except click.ClickException as e:
        e.show()
        return 1
    except Exception as e:
        message, error_code, exit_code, status_code = classify_exception(e)
        logger.error(f"[{error_code}] {message}")
        click.echo(json.dumps(error_body(message, error_code, status_code), ensure_ascii=False), err=True)
        return exit_code


if __name__ == "__main__":
    sys.exit(main())
