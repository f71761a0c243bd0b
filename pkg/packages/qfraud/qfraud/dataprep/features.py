"""
Feature engineering on raw transactions: calendar fields from the UTC
timestamp, customer age at transaction time and customer-merchant distance.
"""

from datetime import UTC, date, datetime
from pathlib import Path
from typing import NamedTuple

import numpy as np
import pandas as pd

from qfraud.dataprep.schema import DROPPED_COLUMNS, TIME_COLUMNS
from qfraud.exceptions import DataError, InvalidArgumentError

EARTH_RADIUS_KM = 6371.0


class TimeFeatures(NamedTuple):
    hour: int
    day: int
    weekday: int
    month: int
    year: int


def _check_coordinates(lat: np.ndarray, lon: np.ndarray) -> None:
    if np.any(np.abs(lat) > 90) or np.any(np.abs(lon) > 180):
        raise InvalidArgumentError("latitude must be in [-90, 90] and longitude in [-180, 180]")


def haversine_km(lat1, lon1, lat2, lon2) -> float | np.ndarray:
    """
    Great-circle distance in kilometres between points given in degrees.

    Accepts scalars or equal-length arrays; returns a float for scalar input.
    """
    lat1, lon1, lat2, lon2 = (np.asarray(v, dtype=np.float64) for v in (lat1, lon1, lat2, lon2))
    _check_coordinates(lat1, lon1)
    _check_coordinates(lat2, lon2)

    phi1, phi2 = np.radians(lat1), np.radians(lat2)
    dphi = phi2 - phi1
    dlam = np.radians(lon2 - lon1)
    a = np.sin(dphi / 2) ** 2 + np.cos(phi1) * np.cos(phi2) * np.sin(dlam / 2) ** 2
    a = np.clip(a, 0.0, 1.0)
    d = 2 * EARTH_RADIUS_KM * np.arctan2(np.sqrt(a), np.sqrt(1 - a))
    return float(d) if d.ndim == 0 else d


def extract_time_features(unix_time: int) -> TimeFeatures:
    """UTC calendar decomposition, weekday 0 = Monday."""
    ts = datetime.fromtimestamp(int(unix_time), tz=UTC)
    return TimeFeatures(ts.hour, ts.day, ts.weekday(), ts.month, ts.year)


def compute_age_years(dob: date, at: date) -> int:
    """
    Completed years between `dob` and `at`. A 29 February birthday is reached
    on 1 March in non-leap years.
    """
    if dob > at:
        raise InvalidArgumentError(f"date of birth {dob} is after {at}")
    before_birthday = (at.month, at.day) < (dob.month, dob.day)
    return at.year - dob.year - int(before_birthday)


def engineer_features(raw: pd.DataFrame, source: Path | None = None) -> pd.DataFrame:
    """
    Add calendar, age and distance columns to a validated raw frame and drop
    the identifying columns. Categorical columns are left as strings.
    """
    df = raw.drop(columns=[c for c in DROPPED_COLUMNS if c in raw.columns]).copy()

    ts = pd.to_datetime(df["unix_time"], unit="s", utc=True)
    for column, values in zip(
        TIME_COLUMNS,
        (ts.dt.hour, ts.dt.day, ts.dt.weekday, ts.dt.month, ts.dt.year),
        strict=True,
    ):
        df[column] = values.astype(np.int64)

    dob = pd.to_datetime(df["dob"])
    before_birthday = (ts.dt.month < dob.dt.month) | (
        (ts.dt.month == dob.dt.month) & (ts.dt.day < dob.dt.day)
    )
    age = ts.dt.year - dob.dt.year - before_birthday.astype(np.int64)
    if (age < 0).any():
        row = int(np.flatnonzero((age < 0).to_numpy())[0]) + 1
        raise DataError("date of birth is after the transaction time", source=source, row=row)
    df["customer_age"] = age.astype(np.int64)

    df["distance_km"] = haversine_km(
        df["lat"].to_numpy(),
        df["long"].to_numpy(),
        df["merch_lat"].to_numpy(),
        df["merch_long"].to_numpy(),
    )
    return df.drop(columns=["dob", "trans_date_trans_time"], errors="ignore")
