"""
Seeded generator of raw transactions in the fraudTrain column layout.

Fraud rows carry planted signals on the engineered features: larger amounts,
merchants far from the cardholder's home and night-time hours. Every signal is
noisy so the classes overlap.
"""

import logging

import numpy as np
import pandas as pd

from qfraud.dataprep.schema import RAW_COLUMNS
from qfraud.exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)

MIN_ROWS = 100
FRAUD_RATE = 0.5
START_UNIX_TIME = 1_577_836_800  # 2020-01-01T00:00:00Z

CITIES = (
    # city, state, zip, lat, long, population
    ("Columbus", "OH", "43215", 39.9612, -82.9988, 905748),
    ("Orlando", "FL", "32801", 28.5383, -81.3792, 307573),
    ("Boulder", "CO", "80302", 40.0150, -105.2705, 108250),
    ("Fresno", "CA", "93721", 36.7378, -119.7871, 542107),
    ("Albany", "NY", "12207", 42.6526, -73.7562, 99224),
    ("Tulsa", "OK", "74103", 36.1540, -95.9928, 413066),
    ("Boise", "ID", "83702", 43.6150, -116.2023, 235684),
    ("Madison", "WI", "53703", 43.0731, -89.4012, 269840),
    ("Raleigh", "NC", "27601", 35.7796, -78.6382, 474069),
    ("Spokane", "WA", "99201", 47.6588, -117.4260, 228989),
    ("Lubbock", "TX", "79401", 33.5779, -101.8552, 257141),
    ("Burlington", "VT", "05401", 44.4759, -73.2121, 44743),
    ("Helena", "MT", "59601", 46.5891, -112.0391, 32091),
    ("Savannah", "GA", "31401", 32.0809, -81.0912, 147780),
    ("Reno", "NV", "89501", 39.5296, -119.8138, 264165),
    ("Omaha", "NE", "68102", 41.2565, -95.9345, 486051),
)

CATEGORIES = (
    "entertainment",
    "food_dining",
    "gas_transport",
    "grocery_net",
    "grocery_pos",
    "health_fitness",
    "home",
    "kids_pets",
    "misc_net",
    "misc_pos",
    "personal_care",
    "shopping_net",
    "shopping_pos",
    "travel",
)
# Card-not-present and grocery categories are over-represented among frauds.
FRAUD_CATEGORY_WEIGHTS = np.array([1, 1, 2, 2, 5, 1, 1, 1, 4, 1, 1, 5, 3, 1], dtype=float)

JOBS = (
    "Accountant",
    "Architect",
    "Chemist",
    "Civil engineer",
    "Dentist",
    "Electrician",
    "Farmer",
    "Journalist",
    "Librarian",
    "Nurse",
    "Pilot",
    "Surveyor",
)
FIRST_NAMES = ("Alex", "Jordan", "Sam", "Taylor", "Morgan", "Casey", "Riley", "Jamie")
LAST_NAMES = ("Smith", "Garcia", "Chen", "Okafor", "Novak", "Silva", "Khan", "Berg")
STREETS = ("Oak St", "Maple Ave", "Pine Rd", "Cedar Ln", "Elm Dr", "Lake Blvd")

NIGHT_HOURS = np.array([22, 23, 0, 1, 2, 3])


def _customers(rng: np.random.Generator, count: int) -> pd.DataFrame:
    city_idx = rng.integers(len(CITIES), size=count)
    cities = [CITIES[i] for i in city_idx]
    dob_days = rng.integers(-10_957, 12_053, size=count)  # 1940-01-01 .. 2002-12-31
    return pd.DataFrame(
        {
            "cc_num": [str(4_000_000_000_000_000 + int(v)) for v in rng.integers(10**15, size=count)],
            "first": rng.choice(FIRST_NAMES, size=count),
            "last": rng.choice(LAST_NAMES, size=count),
            "gender": rng.choice(["F", "M"], size=count),
            "street": [
                f"{int(n)} {s}"
                for n, s in zip(rng.integers(1, 9999, size=count), rng.choice(STREETS, size=count), strict=True)
            ],
            "city": [c[0] for c in cities],
            "state": [c[1] for c in cities],
            "zip": [c[2] for c in cities],
            # small jitter around the city centre
            "lat": np.round([c[3] for c in cities] + rng.normal(scale=0.05, size=count), 6),
            "long": np.round([c[4] for c in cities] + rng.normal(scale=0.05, size=count), 6),
            "city_pop": [c[5] for c in cities],
            "job": rng.choice(JOBS, size=count),
            "dob": pd.to_datetime(dob_days, unit="D").strftime("%Y-%m-%d"),
        }
    )


def generate_synthetic(n_rows: int, seed: int) -> pd.DataFrame:
    """
    Generate `n_rows` raw transactions with a 50% base fraud rate.

    The frame has the raw CSV columns plus `trans_date_trans_time`; writing it
    with `write_transactions` is byte-identical for a fixed seed.
    """
    if n_rows < MIN_ROWS:
        raise InvalidArgumentError(f"n_rows must be at least {MIN_ROWS}, got {n_rows}")

    rng = np.random.default_rng(seed)
    fraud = rng.random(n_rows) < FRAUD_RATE

    customers = _customers(rng, max(20, n_rows // 50))
    rows = customers.iloc[rng.integers(len(customers), size=n_rows)].reset_index(drop=True)

    # 15% of frauds mimic ordinary spending so the amount signal is not a perfect split.
    disguised = fraud & (rng.random(n_rows) < 0.15)
    loud = fraud & ~disguised
    amt = np.where(
        loud,
        rng.lognormal(mean=5.6, sigma=0.7, size=n_rows),
        rng.lognormal(mean=3.6, sigma=0.9, size=n_rows),
    )

    # Merchant offset in degrees; fraud merchants tend to be far away.
    far = fraud & (rng.random(n_rows) < 0.7)
    spread = np.where(far, rng.uniform(1.0, 4.0, size=n_rows), rng.uniform(0.0, 0.6, size=n_rows))
    bearing = rng.uniform(0.0, 2 * np.pi, size=n_rows)
    merch_lat = np.clip(rows["lat"].to_numpy() + spread * np.sin(bearing), -90, 90)
    merch_long = np.clip(rows["long"].to_numpy() + spread * np.cos(bearing), -180, 180)

    night = fraud & (rng.random(n_rows) < 0.6)
    hour = np.where(night, rng.choice(NIGHT_HOURS, size=n_rows), rng.integers(7, 22, size=n_rows))
    day = rng.integers(0, 366, size=n_rows)
    seconds = rng.integers(0, 3600, size=n_rows)
    unix_time = START_UNIX_TIME + day * 86_400 + hour * 3600 + seconds

    weights = np.where(fraud[:, None], FRAUD_CATEGORY_WEIGHTS, np.ones(len(CATEGORIES)))
    weights /= weights.sum(axis=1, keepdims=True)
    category_idx = (weights.cumsum(axis=1) < rng.random(n_rows)[:, None]).sum(axis=1)
    category_idx = np.minimum(category_idx, len(CATEGORIES) - 1)

    trans_hi = rng.integers(0, 2**63, size=n_rows, dtype=np.uint64)
    trans_lo = rng.integers(0, 2**63, size=n_rows, dtype=np.uint64)

    rows["merchant"] = [f"merchant_{int(m):03d}" for m in rng.integers(200, size=n_rows)]
    rows["category"] = np.array(CATEGORIES)[category_idx]
    rows["amt"] = np.round(amt, 2)
    rows["trans_num"] = [f"{int(a):016x}{int(b):016x}" for a, b in zip(trans_hi, trans_lo, strict=True)]
    rows["unix_time"] = unix_time.astype(np.int64)
    rows["merch_lat"] = np.round(merch_lat, 6)
    rows["merch_long"] = np.round(merch_long, 6)
    rows["is_fraud"] = fraud.astype(np.int64)
    rows["trans_date_trans_time"] = pd.to_datetime(rows["unix_time"], unit="s").dt.strftime(
        "%Y-%m-%d %H:%M:%S"
    )

    logger.info("Generated %d transactions (%d fraud)", n_rows, int(fraud.sum()))
    return rows[["trans_date_trans_time", *RAW_COLUMNS]]
