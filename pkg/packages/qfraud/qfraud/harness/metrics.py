import logging
import time

import numpy as np

from qfraud.exceptions import InvalidArgumentError, ShapeError
from qfraud.harness.models import ConfusionMatrix, MetricsReport
from qfraud.hybrid import Model, model_forward, predict
from qfraud.vqc.circuit import DEFAULT_MAX_BATCH_AMPLITUDES

logger = logging.getLogger(__name__)


def _ratio(num: float, den: float) -> float:
    return num / den if den else 0.0


def metrics_from_cm(
    cm: ConfusionMatrix, inference_seconds: float = 0.0, threshold: float = 0.5
) -> MetricsReport:
    """
    accuracy  = (TP + TN) / N
    precision = TP / (TP + FP)
    recall    = TP / (TP + FN)
    f1        = 2PR / (P + R)

    A zero denominator yields 0.
    """
    if cm.total == 0:
        raise InvalidArgumentError("confusion matrix is empty")

    precision = _ratio(cm.tp, cm.tp + cm.fp)
    recall = _ratio(cm.tp, cm.tp + cm.fn)
    return MetricsReport(
        accuracy=(cm.tp + cm.tn) / cm.total,
        precision=precision,
        recall=recall,
        f1=_ratio(2 * precision * recall, precision + recall),
        cm=cm,
        inference_seconds=inference_seconds,
        threshold=threshold,
    )


def evaluate(
    model: Model,
    features: np.ndarray,
    labels: np.ndarray,
    threshold: float = 0.5,
    max_batch_amplitudes: int = DEFAULT_MAX_BATCH_AMPLITUDES,
) -> MetricsReport:
    """Eval-mode forward over the whole set, thresholded and tallied."""
    features = np.asarray(features, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if labels.size == 0:
        raise InvalidArgumentError("cannot evaluate on an empty set")
    if features.shape[0] != labels.size:
        raise ShapeError("labels", (features.shape[0],), labels.shape)

    start = time.perf_counter()
    logits, _ = model_forward(
        features, model, training=False, max_batch_amplitudes=max_batch_amplitudes
    )
    predictions = predict(logits, threshold)
    seconds = time.perf_counter() - start

    cm = ConfusionMatrix.from_predictions(labels, predictions)
    report = metrics_from_cm(cm, inference_seconds=seconds, threshold=threshold)
    logger.info(
        "Evaluated %d rows: accuracy=%.4f f1=%.4f (%.2fs)",
        labels.size,
        report.accuracy,
        report.f1,
        seconds,
    )
    return report
