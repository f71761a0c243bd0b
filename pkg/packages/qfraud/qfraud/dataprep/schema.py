"""Raw transaction schema and the fixed engineered-feature column order."""

from datetime import date

from pydantic import BaseModel, ConfigDict, Field

RAW_COLUMNS: tuple[str, ...] = (
    "cc_num",
    "merchant",
    "category",
    "amt",
    "first",
    "last",
    "gender",
    "street",
    "city",
    "state",
    "zip",
    "lat",
    "long",
    "city_pop",
    "job",
    "dob",
    "trans_num",
    "unix_time",
    "merch_lat",
    "merch_long",
    "is_fraud",
)

# Personally identifiable columns removed before encoding.
DROPPED_COLUMNS: tuple[str, ...] = ("first", "last", "street", "trans_num")

CATEGORICAL_COLUMNS: tuple[str, ...] = (
    "cc_num",
    "merchant",
    "category",
    "gender",
    "city",
    "state",
    "zip",
    "job",
)

TIME_COLUMNS: tuple[str, ...] = (
    "transaction_hour",
    "transaction_day",
    "transaction_weekday",
    "transaction_month",
    "transaction_year",
)

FEATURE_COLUMNS: tuple[str, ...] = (
    "cc_num",
    "merchant",
    "category",
    "amt",
    "gender",
    "city",
    "state",
    "zip",
    "lat",
    "long",
    "city_pop",
    "job",
    "unix_time",
    "merch_lat",
    "merch_long",
    *TIME_COLUMNS,
    "customer_age",
    "distance_km",
)

LABEL_COLUMN = "label"
RAW_LABEL_COLUMN = "is_fraud"


class RawTransaction(BaseModel):
    """One row of a raw transaction CSV."""

    model_config = ConfigDict(extra="ignore", str_strip_whitespace=True)

    cc_num: str = Field(min_length=1)
    merchant: str = Field(min_length=1)
    category: str = Field(min_length=1)
    amt: float = Field(ge=0, allow_inf_nan=False)
    first: str = ""
    last: str = ""
    gender: str = Field(min_length=1)
    street: str = ""
    city: str = Field(min_length=1)
    state: str = Field(min_length=1)
    zip: str = Field(min_length=1)
    lat: float = Field(ge=-90, le=90)
    long: float = Field(ge=-180, le=180)
    city_pop: int = Field(ge=0)
    job: str = Field(min_length=1)
    dob: date
    trans_num: str = ""
    unix_time: int = Field(ge=0)
    merch_lat: float = Field(ge=-90, le=90)
    merch_long: float = Field(ge=-180, le=180)
    is_fraud: int = Field(ge=0, le=1)
