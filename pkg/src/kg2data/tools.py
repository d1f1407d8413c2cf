"""Tool registry and invocation: binds agent-visible tools 1:1 to virtual APIs."""
from __future__ import annotations

import json
import urllib.error
import urllib.request
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Sequence

from .catalog import ApiResponse, Catalog, ParamSpec, _param_from_dict, spec_to_dict
from .errors import EmptySeriesError, ToolError, ToolTextBudgetError, ToolTransportError
from .kg.chunking import count_tokens


@dataclass(frozen=True)
class ToolSpec:
    name: str
    description: str
    params: tuple[ParamSpec, ...]
    bound_api: str


class ToolRegistry:
    def __init__(self, catalog: Catalog):
        self.catalog = catalog
        self._tools: dict[str, ToolSpec] = {}

    def register(self, spec: ToolSpec) -> "ToolRegistry":
        if spec.name in self._tools:
            raise ToolError(f"duplicate tool name {spec.name}")
        api = self.catalog.get(spec.bound_api)
        if api is None:
            raise ToolError(f"tool {spec.name} binds unknown api {spec.bound_api}")
        if spec.params != api.params:
            raise ToolError(f"tool {spec.name} params must mirror api {spec.bound_api} params")
        self._tools[spec.name] = spec
        return self

    @classmethod
    def from_catalog(cls, catalog: Catalog) -> "ToolRegistry":
        registry = cls(catalog)
        for api in catalog.apis:
            registry.register(
                ToolSpec(name=api.name, description=api.description, params=api.params, bound_api=api.name)
            )
        return registry

    def get(self, name: str) -> ToolSpec | None:
        return self._tools.get(name)

    def names(self) -> list[str]:
        return list(self._tools)

    def __len__(self) -> int:
        return len(self._tools)

    def __contains__(self, name: str) -> bool:
        return name in self._tools

    def __iter__(self):
        return iter(self._tools.values())


def save_registry(registry: ToolRegistry, path: str | Path) -> None:
    doc = {
        "tools": [
            {
                "name": spec.name,
                "description": spec.description,
                "params": spec_to_dict(registry.catalog.get(spec.bound_api))["params"],
                "bound_api": spec.bound_api,
            }
            for spec in registry
        ]
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def load_registry(path: str | Path, catalog: Catalog) -> ToolRegistry:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    registry = ToolRegistry(catalog)
    for entry in doc["tools"]:
        registry.register(
            ToolSpec(
                name=entry["name"],
                description=entry["description"],
                params=tuple(_param_from_dict(p) for p in entry["params"]),
                bound_api=entry["bound_api"],
            )
        )
    return registry


def _param_line(p: ParamSpec) -> str:
    bits = [p.kind]
    if p.required:
        bits.append("required")
    if p.units:
        bits.append(f"unit {p.units}")
    if p.allowed_values:
        bits.append("one of " + "/".join(p.allowed_values))
    if p.range:
        bits.append(f"range [{p.range[0]:g}, {p.range[1]:g}]")
    return f"  - {p.name} ({', '.join(bits)})"


def describe_tools(registry: ToolRegistry, format_budget: int = 100_000) -> str:
    """Render every tool block; refuses to truncate (sizing error instead)."""
    blocks = []
    for spec in registry:
        lines = [f"Tool: {spec.name}", f"Description: {spec.description}", "Params:"]
        lines.extend(_param_line(p) for p in spec.params)
        blocks.append("\n".join(lines))
    text = "\n\n".join(blocks)
    needed = count_tokens(text)
    if needed > format_budget:
        raise ToolTextBudgetError(needed, format_budget)
    return text


def series_stats(values: Sequence[float]) -> dict[str, float]:
    if not values:
        raise EmptySeriesError("cannot compute statistics of an empty series")
    return {
        "mean": sum(values) / len(values),
        "min": min(values),
        "max": max(values),
        "count": len(values),
    }


@dataclass
class ToolResult:
    raw: ApiResponse
    extracted: dict[str, Any]
    stats: dict[str, float] | None
    rendered: str


@dataclass
class Invocation:
    kind: str  # ok | unknown_tool | invalid_params
    tool_name: str
    observation: str
    result: ToolResult | None = None
    violations: tuple[str, ...] = ()


def render_observation(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


class LocalApiClient:
    """Calls the catalog in-process; no network involved."""

    def __init__(self, catalog: Catalog, seed: int = 0):
        self.catalog = catalog
        self.seed = seed

    def call(self, api_name: str, params: Mapping[str, Any]) -> ApiResponse:
        return self.catalog.call(api_name, params, self.seed)


class HttpApiClient:
    """Calls a running catalog server over HTTP."""

    def __init__(self, base_url: str, seed: int = 0, timeout: float = 10.0):
        self.base_url = base_url.rstrip("/")
        self.seed = seed
        self.timeout = timeout

    def call(self, api_name: str, params: Mapping[str, Any]) -> ApiResponse:
        req = urllib.request.Request(
            f"{self.base_url}/apis/{api_name}",
            data=json.dumps(dict(params)).encode("utf-8"),
            headers={"Content-Type": "application/json", "X-Seed": str(self.seed)},
            method="POST",
        )
        try:
            with urllib.request.urlopen(req, timeout=self.timeout) as resp:
                return ApiResponse.from_json(resp.read().decode("utf-8"))
        except urllib.error.HTTPError as e:
            body = e.read().decode("utf-8", errors="replace")
            try:
                return ApiResponse.from_json(body)
            except (json.JSONDecodeError, KeyError):
                raise ToolTransportError(f"API server returned {e.code}: {body[:200]}") from e
        except (urllib.error.URLError, OSError) as e:
            raise ToolTransportError(f"cannot reach API server: {e}") from e


def invoke(registry: ToolRegistry, name: str, params: Mapping[str, Any] | None, api_client) -> Invocation:
    """Run one tool call; unknown names never reach the API client."""
    spec = registry.get(name)
    if spec is None:
        observation = render_observation(
            {"status": "unknown_tool", "tool": name, "hint": "tool is not registered"}
        )
        return Invocation(kind="unknown_tool", tool_name=name, observation=observation)
    response = api_client.call(spec.bound_api, params or {})
    if response.status != "ok":
        observation = render_observation({"status": response.status, "errors": list(response.errors)})
        return Invocation(
            kind="invalid_params",
            tool_name=name,
            observation=observation,
            violations=response.errors,
        )
    extracted = dict(response.payload)
    stats = None
    api = registry.catalog.get(spec.bound_api)
    for field_spec in api.output_fields:
        if field_spec.kind == "series":
            stats = series_stats(extracted[field_spec.name])
            break
    doc: dict[str, Any] = {"status": "ok", "data": extracted}
    if stats is not None:
        doc["stats"] = stats
    observation = render_observation(doc)
    result = ToolResult(raw=response, extracted=extracted, stats=stats, rendered=observation)
    return Invocation(kind="ok", tool_name=name, observation=observation, result=result)
