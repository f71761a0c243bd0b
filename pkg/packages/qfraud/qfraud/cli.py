import importlib
import logging
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from types import ModuleType
from typing import Any

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.progress import BarColumn, Progress, SpinnerColumn, TaskProgressColumn, TextColumn
from rich.table import Table

from qfraud.config import QFraudSettings, load_settings, read_config_file
from qfraud.dataprep import (
    DEFAULT_FRACTIONS,
    DEFAULT_PER_CLASS,
    generate_synthetic,
    load_metadata,
    load_split,
    preprocess,
    read_transactions,
    save_split,
    write_transactions,
)
from qfraud.exceptions import InvalidArgumentError, QFraudError
from qfraud.exit_codes import ExitCode
from qfraud.harness import (
    ConfusionMatrix,
    EpochRecord,
    MetricsReport,
    ScaleConfig,
    TrainConfig,
    benchmark,
    evaluate,
    load_checkpoint,
    read_checkpoint_meta,
    scale,
    train,
    write_epochs,
    write_metrics,
)
from qfraud.hybrid import ModelKind
from qfraud.logging import setup_logging

logger = logging.getLogger(__name__)

app = typer.Typer(no_args_is_help=True)
console = Console()
err_console = Console(stderr=True)


@contextmanager
def exit_on_error() -> Iterator[None]:
    """Turn library errors into a printed message and the matching exit code."""
    try:
        yield
    except (QFraudError, ValidationError, OSError, ValueError) as e:
        code = ExitCode.from_exception(e)
        logger.error("%s failed (%s): %s", type(e).__name__, code.name, e)
        err_console.print(f"[red]Error: {e}[/red]")
        raise typer.Exit(code=int(code)) from None


def build_train_config(config_file: Path | None, **flags: Any) -> TrainConfig:
    """TrainConfig defaults < config file < flags that were actually given."""
    values: dict[str, Any] = read_config_file(config_file) if config_file else {}
    values.update({k: v for k, v in flags.items() if v is not None})
    return TrainConfig.model_validate(values)


def check_qubits(cfg: TrainConfig, settings: QFraudSettings) -> None:
    if cfg.model_kind == ModelKind.HYBRID and cfg.n_qubits > settings.max_qubits:
        raise InvalidArgumentError(
            f"{cfg.n_qubits} qubits exceeds the configured maximum of {settings.max_qubits}"
        )


def epoch_progress() -> Progress:
    return Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        TaskProgressColumn(),
        TextColumn("{task.fields[status]}"),
        console=console,
    )


def print_confusion_matrix(cm: ConfusionMatrix, title: str = "Confusion Matrix") -> None:
    """Rows are actual labels, columns predicted labels."""
    table = Table(title=title)
    table.add_column("actual \\ predicted", style="cyan")
    table.add_column("legit (0)", justify="right")
    table.add_column("fraud (1)", justify="right")
    table.add_row("legit (0)", str(cm.tn), str(cm.fp))
    table.add_row("fraud (1)", str(cm.fn), str(cm.tp))
    console.print(table)


def print_metrics(report: MetricsReport, title: str = "Metrics") -> None:
    table = Table(title=title)
    table.add_column("Metric", style="cyan")
    table.add_column("Value", style="green", justify="right")
    table.add_row("Accuracy", f"{report.accuracy:.4f}")
    table.add_row("Precision", f"{report.precision:.4f}")
    table.add_row("Recall", f"{report.recall:.4f}")
    table.add_row("F1", f"{report.f1:.4f}")
    table.add_row("Threshold", f"{report.threshold:g}")
    table.add_row("Inference", f"{report.inference_seconds:.3f}s")
    console.print(table)
    print_confusion_matrix(report.cm)


@app.command("generate")
def generate_cmd(
    rows: int = typer.Option(10_000, "--rows", "-n", help="Number of transactions"),
    seed: int = typer.Option(0, "--seed", "-s", help="Random seed"),
    out: Path = typer.Option(Path("data.csv"), "--out", "-o", help="Output CSV path"),
):
    """Write a seeded synthetic credit-card transaction CSV."""
    with exit_on_error():
        frame = generate_synthetic(rows, seed)
        write_transactions(frame, out)
    console.print(
        f"Wrote {len(frame)} transactions ({int(frame['is_fraud'].sum())} fraud) to {out}"
    )


@app.command("preprocess")
def preprocess_cmd(
    raw: Path = typer.Option(..., "--in", "-i", help="Raw transaction CSV"),
    out_dir: Path = typer.Option(Path("splits"), "--out-dir", "-o", help="Split directory"),
    per_class: int = typer.Option(
        DEFAULT_PER_CLASS, "--per-class", help="Rows drawn per class before splitting"
    ),
    seed: int = typer.Option(0, "--seed", "-s", help="Random seed"),
    encoders_from: Path | None = typer.Option(
        None,
        "--encoders-from",
        help="Split directory whose category encoders are reused instead of refitted",
    ),
):
    """
    Engineer features, balance the classes and write train/val/test splits.

    The split directory holds train.csv, val.csv, test.csv and metadata.yaml.
    """
    with exit_on_error():
        encoders = load_metadata(encoders_from).encoders if encoders_from else None
        split = preprocess(
            read_transactions(raw), per_class=per_class, seed=seed, source=raw, encoders=encoders
        )
        path = save_split(split, out_dir, fractions=DEFAULT_FRACTIONS, per_class=per_class)

    table = Table(title="Splits")
    table.add_column("Part", style="cyan")
    table.add_column("Rows", justify="right")
    table.add_column("Fraud", justify="right")
    for name in ("train", "val", "test"):
        _, y = split.part(name)
        table.add_row(name, str(y.size), str(int(y.sum())))
    console.print(table)
    console.print(f"[dim]Splits saved to: {path}[/dim]")


@app.command("train")
def train_cmd(
    data: Path = typer.Option(..., "--data", "-d", help="Split directory from preprocess"),
    config_file: Path | None = typer.Option(
        None, "--config-file", "-c", help="key=value file; flags override it"
    ),
    model: ModelKind | None = typer.Option(None, "--model", "-m", help="Model kind"),
    epochs: int | None = typer.Option(None, "--epochs"),
    batch_size: int | None = typer.Option(None, "--batch-size"),
    lr: float | None = typer.Option(None, "--lr"),
    weight_decay: float | None = typer.Option(None, "--weight-decay"),
    clip_norm: float | None = typer.Option(None, "--clip-norm"),
    qubits: int | None = typer.Option(None, "--qubits"),
    layers: int | None = typer.Option(None, "--layers", help="Entangling layers"),
    hidden: int | None = typer.Option(None, "--hidden", help="LSTM hidden size"),
    lstm_layers: int | None = typer.Option(None, "--lstm-layers", help="Hybrid LSTM depth"),
    dropout: float | None = typer.Option(None, "--dropout"),
    threshold: float | None = typer.Option(None, "--threshold"),
    seed: int | None = typer.Option(None, "--seed", "-s"),
    out: Path | None = typer.Option(None, "--out", "-o", help="Run directory"),
    mask_timing: bool = typer.Option(
        False, "--mask-timing", help="Write wall-clock fields as 0.0"
    ),
):
    """
    Train the hybrid or baseline model on a split directory.

    Writes run.json, events.jsonl, best.ckpt and epochs.csv to the run directory.
    """
    settings = load_settings()
    with exit_on_error():
        cfg = build_train_config(
            config_file,
            model_kind=model,
            epochs=epochs,
            batch_size=batch_size,
            lr=lr,
            weight_decay=weight_decay,
            clip_norm=clip_norm,
            n_qubits=qubits,
            n_layers=layers,
            hidden_size=hidden,
            lstm_layers=lstm_layers,
            dropout=dropout,
            threshold=threshold,
            seed=seed,
        )
        check_qubits(cfg, settings)
        split = load_split(data)
        out_dir = out or settings.artifacts_dir / "runs" / cfg.model_kind.value

        with epoch_progress() as progress:
            task = progress.add_task(f"[cyan]Training {cfg.model_kind}...", total=cfg.epochs, status="")

            def on_epoch(record: EpochRecord) -> None:
                progress.update(
                    task,
                    advance=1,
                    status=f"val_loss={record.val_loss:.4f} val_acc={record.val_accuracy:.3f}",
                )

            result = train(
                cfg,
                split,
                out_dir=out_dir,
                on_epoch=on_epoch,
                max_batch_amplitudes=settings.max_batch_amplitudes,
            )
        write_epochs(result.records, out_dir, mask_timing)

    table = Table(title="Training Summary")
    table.add_column("Metric", style="cyan")
    table.add_column("Value", style="green")
    table.add_row("Run ID", result.run_id)
    table.add_row("Model", str(cfg.model_kind))
    table.add_row("Parameters", str(result.model.parameter_count))
    table.add_row("Quantum parameters", str(result.model.quantum_parameter_count))
    table.add_row("Optimizer steps", str(result.optimizer_steps))
    if result.best_epoch is not None:
        table.add_row("Best epoch", str(result.best_epoch))
        table.add_row("Best val loss", f"{result.best_val_loss:.4f}")
    table.add_row("Avg epoch time", f"{result.avg_epoch_seconds:.2f}s")
    console.print(table)
    console.print(f"\n[dim]Artifacts saved to: {out_dir}[/dim]")


@app.command("evaluate")
def evaluate_cmd(
    checkpoint: Path = typer.Option(..., "--checkpoint", "-k", help="Checkpoint file"),
    data: Path = typer.Option(..., "--data", "-d", help="Split directory"),
    part: str = typer.Option("test", "--split", help="train, val or test"),
    threshold: float | None = typer.Option(
        None, "--threshold", help="Defaults to the threshold the model was trained with"
    ),
    out: Path | None = typer.Option(None, "--out", "-o", help="Report directory"),
    mask_timing: bool = typer.Option(
        False, "--mask-timing", help="Write wall-clock fields as 0.0"
    ),
):
    """Score a checkpoint on one part of a split directory and write metrics.json."""
    settings = load_settings()
    with exit_on_error():
        meta = read_checkpoint_meta(checkpoint)
        if threshold is None:
            threshold = meta.config.threshold if meta.config else 0.5
        model = load_checkpoint(checkpoint)
        features, labels = load_split(data).part(part)
        report = evaluate(
            model,
            features,
            labels,
            threshold=threshold,
            max_batch_amplitudes=settings.max_batch_amplitudes,
        )
        out_dir = out or settings.artifacts_dir / "reports"
        path = write_metrics(report, out_dir, mask_timing)

    print_metrics(report, title=f"{model.kind} on {part}")
    console.print(f"\n[dim]Report saved to: {path}[/dim]")


@app.command("benchmark")
def benchmark_cmd(
    data: Path = typer.Option(..., "--data", "-d", help="Split directory"),
    config_file: Path | None = typer.Option(
        None, "--config-file", "-c", help="key=value file; flags override it"
    ),
    epochs: int | None = typer.Option(None, "--epochs"),
    batch_size: int | None = typer.Option(None, "--batch-size"),
    lr: float | None = typer.Option(None, "--lr"),
    weight_decay: float | None = typer.Option(None, "--weight-decay"),
    clip_norm: float | None = typer.Option(None, "--clip-norm"),
    qubits: int | None = typer.Option(None, "--qubits"),
    layers: int | None = typer.Option(None, "--layers"),
    hidden: int | None = typer.Option(None, "--hidden"),
    dropout: float | None = typer.Option(None, "--dropout"),
    seed: int | None = typer.Option(None, "--seed", "-s"),
    out: Path | None = typer.Option(None, "--out", "-o", help="Benchmark directory"),
    mask_timing: bool = typer.Option(False, "--mask-timing"),
):
    """Train both models with the same settings and compare them on the test set."""
    settings = load_settings()
    with exit_on_error():
        cfg = build_train_config(
            config_file,
            epochs=epochs,
            batch_size=batch_size,
            lr=lr,
            weight_decay=weight_decay,
            clip_norm=clip_norm,
            n_qubits=qubits,
            n_layers=layers,
            hidden_size=hidden,
            dropout=dropout,
            seed=seed,
        )
        check_qubits(cfg, settings)
        split = load_split(data)
        out_dir = out or settings.artifacts_dir / "bench"

        with epoch_progress() as progress:
            task = progress.add_task("[cyan]Benchmarking...", total=2 * cfg.epochs, status="")
            runs = benchmark(
                cfg,
                split,
                out_dir,
                mask_timing=mask_timing,
                on_epoch=lambda record: progress.advance(task),
                max_batch_amplitudes=settings.max_batch_amplitudes,
            )

    table = Table(title="Model Comparison")
    for column in ("Model", "Accuracy", "Precision", "Recall", "F1", "Eval (s)", "Epoch (s)", "Params"):
        table.add_column(column, justify="left" if column == "Model" else "right")
    for run in runs:
        row = run.row()
        table.add_row(
            str(row.model),
            f"{row.accuracy:.4f}",
            f"{row.precision:.4f}",
            f"{row.recall:.4f}",
            f"{row.f1:.4f}",
            f"{row.inference_seconds:.3f}",
            f"{row.avg_epoch_seconds:.2f}",
            str(row.parameter_count),
        )
    console.print(table)
    for run in runs:
        print_confusion_matrix(run.report.cm, title=f"{run.kind} confusion matrix")
    console.print(f"\n[dim]Comparison saved to: {out_dir}[/dim]")


@app.command("scale")
def scale_cmd(
    raw: Path = typer.Option(..., "--raw", "-r", help="Raw transaction CSV"),
    points: list[str] = typer.Option(
        ..., "--config", help="QUBITS:PER_CLASS, repeatable (e.g. 10:5000)"
    ),
    config_file: Path | None = typer.Option(
        None, "--config-file", "-c", help="key=value file; flags override it"
    ),
    epochs: int | None = typer.Option(None, "--epochs"),
    batch_size: int | None = typer.Option(None, "--batch-size"),
    lr: float | None = typer.Option(None, "--lr"),
    layers: int | None = typer.Option(None, "--layers"),
    seed: int | None = typer.Option(None, "--seed", "-s"),
    out: Path | None = typer.Option(None, "--out", "-o", help="Scaling directory"),
    mask_timing: bool = typer.Option(False, "--mask-timing"),
):
    """Retrain the hybrid model across qubit counts and dataset sizes."""
    settings = load_settings()
    with exit_on_error():
        configs = [ScaleConfig.parse(p) for p in points]
        cfg = build_train_config(
            config_file,
            model_kind=ModelKind.HYBRID,
            epochs=epochs,
            batch_size=batch_size,
            lr=lr,
            n_layers=layers,
            seed=seed,
        )
        for sc in configs:
            check_qubits(cfg.model_copy(update={"n_qubits": sc.n_qubits}), settings)
        out_dir = out or settings.artifacts_dir / "scale"
        rows = scale(
            read_transactions(raw),
            configs,
            cfg,
            out_dir,
            mask_timing=mask_timing,
            source=raw,
            max_batch_amplitudes=settings.max_batch_amplitudes,
        )

    table = Table(title="Scaling")
    for column in ("Qubits", "Per class", "Samples", "Accuracy", "Recall", "F1", "Epoch (s)"):
        table.add_column(column, justify="right")
    for row in rows:
        table.add_row(
            str(row.n_qubits),
            str(row.per_class),
            str(row.samples),
            f"{row.accuracy:.4f}",
            f"{row.recall:.4f}",
            f"{row.f1:.4f}",
            f"{row.avg_epoch_seconds:.2f}",
        )
    console.print(table)


@app.callback()
def callback(
    log_level: str | None = typer.Option(
        None, "--log-level", help="Overrides QFRAUD_LOG_LEVEL"
    ),
):
    """
    qfraud: hybrid quantum-classical LSTM fraud detection.

    Generate synthetic transactions, preprocess them into splits, train and
    evaluate the hybrid and baseline models, and compare them.
    """
    setup_logging(log_level or load_settings().log_level)


def click_exceptions() -> ModuleType:
    """The exceptions module of the click that typer runs on, bundled or installed."""
    return importlib.import_module(typer.BadParameter.__module__)


def main() -> None:
    """Console entry point; usage errors exit with 1 instead of click's 2."""
    errors = click_exceptions()
    try:
        code = app(standalone_mode=False)
    except errors.Abort:
        err_console.print("Aborted.")
        sys.exit(int(ExitCode.USAGE))
    except errors.ClickException as e:
        e.show()
        sys.exit(int(ExitCode.USAGE))
    sys.exit(code or 0)


if __name__ == "__main__":
    main()
