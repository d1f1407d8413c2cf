"""Virtual meteorological API catalog: schemas, validation, deterministic synthesis."""
from __future__ import annotations

import hashlib
import json
import random
import re
from dataclasses import dataclass, field
from datetime import date, timedelta
from pathlib import Path
from typing import Any, Iterable, Mapping

from .errors import CatalogError, ContractViolation

CATEGORIES = (
    "temperature",
    "humidity",
    "precipitation",
    "wind_speed",
    "wind_direction",
    "pressure",
    "radiation",
    "other",
)
PARAM_KINDS = ("string", "integer", "number", "boolean", "date", "enum")
FIELD_KINDS = PARAM_KINDS + ("series",)
NUMERIC_KINDS = ("integer", "number")

_NAME_RE = re.compile(r"^[a-z][a-z0-9_]*$")
_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")


def is_valid_date(value: str) -> bool:
    if not isinstance(value, str) or not _DATE_RE.match(value):
        return False
    try:
        date.fromisoformat(value)
    except ValueError:
        return False
    return True


@dataclass(frozen=True)
class ParamSpec:
    name: str
    kind: str
    units: str | None = None
    required: bool = False
    allowed_values: tuple[str, ...] | None = None
    range: tuple[float, float] | None = None

    def __post_init__(self):
        if not _NAME_RE.match(self.name):
            raise CatalogError(f"param name {self.name!r} is not a snake_case identifier")
        if self.kind not in PARAM_KINDS:
            raise CatalogError(f"param {self.name}: unknown kind {self.kind!r}")
        if (self.kind == "enum") != (self.allowed_values is not None):
            raise CatalogError(f"param {self.name}: allowed_values present iff kind=enum")
        if self.range is not None:
            if self.kind not in NUMERIC_KINDS:
                raise CatalogError(f"param {self.name}: range only allowed on numeric kinds")
            if self.range[0] > self.range[1]:
                raise CatalogError(f"param {self.name}: range min exceeds max")


@dataclass(frozen=True)
class FieldSpec:
    name: str
    kind: str
    units: str | None = None
    range: tuple[float, float] | None = None
    element_kind: str | None = None
    max_length: int | None = None

    def __post_init__(self):
        if not _NAME_RE.match(self.name):
            raise CatalogError(f"field name {self.name!r} is not a snake_case identifier")
        if self.kind not in FIELD_KINDS:
            raise CatalogError(f"field {self.name}: unknown kind {self.kind!r}")
        if self.kind == "series":
            if self.element_kind not in NUMERIC_KINDS:
                raise CatalogError(f"series field {self.name} must declare a numeric element_kind")
            if not self.max_length or self.max_length < 1:
                raise CatalogError(f"series field {self.name} must declare a positive max_length")
        elif self.element_kind is not None or self.max_length is not None:
            raise CatalogError(f"field {self.name}: element_kind/max_length only on series fields")
        if self.range is not None and self.range[0] > self.range[1]:
            raise CatalogError(f"field {self.name}: range min exceeds max")


@dataclass(frozen=True)
class ApiSpec:
    name: str
    description: str
    category: str
    params: tuple[ParamSpec, ...]
    output_fields: tuple[FieldSpec, ...]

    def __post_init__(self):
        if not _NAME_RE.match(self.name):
            raise CatalogError(f"api name {self.name!r} is not a snake_case identifier")
        if self.category not in CATEGORIES:
            raise CatalogError(f"api {self.name}: unknown category {self.category!r}")
        if not self.params:
            raise CatalogError(f"api {self.name}: at least one param required")
        if not self.output_fields:
            raise CatalogError(f"api {self.name}: at least one output field required")
        for seq, label in ((self.params, "param"), (self.output_fields, "output field")):
            names = [s.name for s in seq]
            if len(names) != len(set(names)):
                raise CatalogError(f"api {self.name}: duplicate {label} name")

    def param(self, name: str) -> ParamSpec | None:
        for p in self.params:
            if p.name == name:
                return p
        return None


@dataclass
class ApiResponse:
    api_name: str
    status: str  # ok | invalid_params | not_found
    payload: dict[str, Any] = field(default_factory=dict)
    errors: tuple[str, ...] = ()

    def to_json(self) -> str:
        doc = {
            "api_name": self.api_name,
            "status": self.status,
            "payload": self.payload,
            "errors": list(self.errors),
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "ApiResponse":
        doc = json.loads(text)
        return cls(
            api_name=doc["api_name"],
            status=doc["status"],
            payload=doc["payload"],
            errors=tuple(doc["errors"]),
        )


@dataclass
class ValidationResult:
    ok: bool
    violations: list[str]


def canonicalize_value(value: Any) -> Any:
    """Normalize a JSON value: integral floats become ints, recursively."""
    if isinstance(value, bool):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    if isinstance(value, dict):
        return {k: canonicalize_value(v) for k, v in value.items()}
    if isinstance(value, list):
        return [canonicalize_value(v) for v in value]
    return value


def canonical_params(params: Mapping[str, Any]) -> str:
    """Sorted-key, normalized-number serialization used for response seeding."""
    return json.dumps(canonicalize_value(dict(params)), sort_keys=True, separators=(",", ":"))


def validate_request(spec: ApiSpec, params: Mapping[str, Any]) -> ValidationResult:
    """Check params against the API schema; collects every violation, never fails fast."""
    violations: list[str] = []
    known = {p.name for p in spec.params}
    for p in spec.params:
        if p.required and p.name not in params:
            violations.append(f"missing required param {p.name}")
    for name in params:
        if name not in known:
            violations.append(f"unknown param {name}")
    for name, value in params.items():
        p = spec.param(name)
        if p is None:
            continue
        violations.extend(_check_kind(p, value))
    return ValidationResult(ok=not violations, violations=violations)


def _check_kind(p: ParamSpec, value: Any) -> list[str]:
    out: list[str] = []
    if p.kind == "string":
        if not isinstance(value, str):
            out.append(f"param {p.name} must be a string")
    elif p.kind == "integer":
        if isinstance(value, bool) or not isinstance(value, int):
            out.append(f"param {p.name} must be an integer")
    elif p.kind == "number":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            out.append(f"param {p.name} must be a number")
    elif p.kind == "boolean":
        if not isinstance(value, bool):
            out.append(f"param {p.name} must be a boolean")
    elif p.kind == "date":
        if not is_valid_date(value):
            out.append(f"param {p.name}: invalid date {value!r} (expected YYYY-MM-DD)")
    elif p.kind == "enum":
        if value not in (p.allowed_values or ()):
            out.append(f"param {p.name}: value {value!r} not in {sorted(p.allowed_values or ())}")
    if p.range is not None and isinstance(value, (int, float)) and not isinstance(value, bool):
        lo, hi = p.range
        if value < lo:
            out.append(f"param {p.name}: value {value} below minimum {lo}")
        elif value > hi:
            out.append(f"param {p.name}: value {value} above maximum {hi}")
    return out


def _response_rng(api_name: str, params: Mapping[str, Any], seed: int) -> random.Random:
    material = f"{api_name}\n{canonical_params(params)}\n{seed}".encode("utf-8")
    digest = hashlib.sha256(material).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _synth_scalar(f: FieldSpec, kind: str, rng: random.Random) -> Any:
    lo, hi = f.range if f.range is not None else (0.0, 100.0)
    if kind == "number":
        value = round(lo + (hi - lo) * rng.random(), 3)
        return min(max(value, lo), hi)
    if kind == "integer":
        return rng.randint(int(lo), int(hi))
    if kind == "boolean":
        return rng.random() < 0.5
    if kind == "date":
        return (date(2024, 1, 1) + timedelta(days=rng.randrange(366))).isoformat()
    # string
    return f"{f.name}_{rng.randrange(16 ** 6):06x}"


def synthesize_response(spec: ApiSpec, params: Mapping[str, Any], seed: int) -> ApiResponse:
    """Deterministic payload: a pure function of (api name, canonical params, seed)."""
    check = validate_request(spec, params)
    if not check.ok:
        raise ContractViolation(
            f"synthesize_response called with invalid params for {spec.name}: {check.violations}"
        )
    rng = _response_rng(spec.name, params, seed)
    payload: dict[str, Any] = {}
    canonical = canonicalize_value(dict(params))
    for f in spec.output_fields:
        if f.name in canonical:
            payload[f.name] = canonical[f.name]
        elif f.kind == "series":
            length = rng.randint(1, f.max_length or 1)
            payload[f.name] = [_synth_scalar(f, f.element_kind or "number", rng) for _ in range(length)]
        else:
            payload[f.name] = _synth_scalar(f, f.kind, rng)
    return ApiResponse(api_name=spec.name, status="ok", payload=payload)


@dataclass(frozen=True)
class Catalog:
    apis: tuple[ApiSpec, ...]

    def __post_init__(self):
        if not self.apis:
            raise CatalogError("catalog must contain ≥1 API")
        seen: set[str] = set()
        for spec in self.apis:
            if spec.name in seen:
                raise CatalogError(f"duplicate api name {spec.name}")
            seen.add(spec.name)

    def __len__(self) -> int:
        return len(self.apis)

    def get(self, name: str) -> ApiSpec | None:
        for spec in self.apis:
            if spec.name == name:
                return spec
        return None

    def call(self, name: str, params: Mapping[str, Any], seed: int) -> ApiResponse:
        """Single entry point shared by the HTTP server and in-process clients."""
        spec = self.get(name)
        if spec is None:
            return ApiResponse(api_name=name, status="not_found", errors=(f"unknown api {name}",))
        check = validate_request(spec, params)
        if not check.ok:
            return ApiResponse(api_name=name, status="invalid_params", errors=tuple(check.violations))
        return synthesize_response(spec, params, seed)


def _param_from_dict(doc: Mapping[str, Any]) -> ParamSpec:
    return ParamSpec(
        name=doc["name"],
        kind=doc["kind"],
        units=doc.get("units"),
        required=bool(doc.get("required", False)),
        allowed_values=tuple(doc["allowed_values"]) if doc.get("allowed_values") is not None else None,
        range=tuple(doc["range"]) if doc.get("range") is not None else None,
    )


def _field_from_dict(doc: Mapping[str, Any]) -> FieldSpec:
    return FieldSpec(
        name=doc["name"],
        kind=doc["kind"],
        units=doc.get("units"),
        range=tuple(doc["range"]) if doc.get("range") is not None else None,
        element_kind=doc.get("element_kind"),
        max_length=doc.get("max_length"),
    )


def spec_from_dict(doc: Mapping[str, Any]) -> ApiSpec:
    try:
        return ApiSpec(
            name=doc["name"],
            description=doc["description"],
            category=doc["category"],
            params=tuple(_param_from_dict(p) for p in doc["params"]),
            output_fields=tuple(_field_from_dict(f) for f in doc["output_fields"]),
        )
    except KeyError as e:
        raise CatalogError(f"api spec missing field {e.args[0]!r}") from e


def _drop_nones(doc: dict) -> dict:
    return {k: v for k, v in doc.items() if v is not None}


def spec_to_dict(spec: ApiSpec) -> dict:
    return {
        "name": spec.name,
        "description": spec.description,
        "category": spec.category,
        "params": [
            _drop_nones(
                {
                    "name": p.name,
                    "kind": p.kind,
                    "units": p.units,
                    "required": p.required,
                    "allowed_values": list(p.allowed_values) if p.allowed_values is not None else None,
                    "range": list(p.range) if p.range is not None else None,
                }
            )
            for p in spec.params
        ],
        "output_fields": [
            _drop_nones(
                {
                    "name": f.name,
                    "kind": f.kind,
                    "units": f.units,
                    "range": list(f.range) if f.range is not None else None,
                    "element_kind": f.element_kind,
                    "max_length": f.max_length,
                }
            )
            for f in spec.output_fields
        ],
    }


def load_catalog(path: str | Path) -> Catalog:
    """Load `{"apis": [...]}` from disk; parse errors carry line/column."""
    raw = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as e:
        raise CatalogError(f"parse error at line {e.lineno}, column {e.colno}: {e.msg}") from e
    if not isinstance(doc, dict) or "apis" not in doc:
        raise CatalogError("catalog file must be an object with an 'apis' list")
    return Catalog(apis=tuple(spec_from_dict(d) for d in doc["apis"]))


def write_catalog(catalog: Catalog, path: str | Path) -> None:
    doc = {"apis": [spec_to_dict(s) for s in catalog.apis]}
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
