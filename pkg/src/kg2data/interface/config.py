"""Application config: packaged-data defaults, optionally overridden by a JSON
file and by KG2DATA_LLM_* environment variables."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .. import resources
from ..errors import ConfigError


@dataclass
class LlmSettings:
    endpoint: str = ""
    model: str = ""
    api_key: str = ""
    timeout: float = 60.0


@dataclass
class AppConfig:
    catalog_path: Path = resources.CATALOG_FILE
    cases_path: Path = resources.CASES_FILE
    corpus_dir: Path = resources.CORPUS_DIR
    aliases_path: Path = resources.ALIASES_FILE
    synonyms_path: Path = resources.SYNONYMS_FILE
    graph_snapshot: Path = resources.SNAPSHOT_FILE
    cassette_dir: Path = resources.GOLD_CASSETTE_DIR
    kg_build_cassette: Path = resources.KG_BUILD_CASSETTE
    pairs_cassette: Path = resources.PAIRS_CASSETTE
    reports_dir: Path = Path("reports")
    seed: int = 0
    llm: LlmSettings = field(default_factory=LlmSettings)


_PATH_KEYS = (
    "catalog_path",
    "cases_path",
    "corpus_dir",
    "aliases_path",
    "synonyms_path",
    "graph_snapshot",
    "cassette_dir",
    "kg_build_cassette",
    "pairs_cassette",
    "reports_dir",
)


def _env_llm(settings: LlmSettings) -> LlmSettings:
    return LlmSettings(
        endpoint=os.environ.get("KG2DATA_LLM_ENDPOINT", settings.endpoint),
        model=os.environ.get("KG2DATA_LLM_MODEL", settings.model),
        api_key=os.environ.get("KG2DATA_LLM_API_KEY", settings.api_key),
        timeout=float(os.environ.get("KG2DATA_LLM_TIMEOUT", settings.timeout)),
    )


def load_config(path: str | Path | None) -> AppConfig:
    config = AppConfig()
    if path is None:
        config.llm = _env_llm(config.llm)
        return config
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise ConfigError(f"config file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file is not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise ConfigError("config file must hold a JSON object")
    base = Path(path).resolve().parent
    for key in _PATH_KEYS:
        if key in doc:
            value = Path(doc[key])
            setattr(config, key, value if value.is_absolute() else base / value)
    if "seed" in doc:
        config.seed = int(doc["seed"])
    llm = doc.get("llm", {})
    if not isinstance(llm, dict):
        raise ConfigError("config key 'llm' must be an object")
    config.llm = _env_llm(
        LlmSettings(
            endpoint=llm.get("endpoint", ""),
            model=llm.get("model", ""),
            api_key=llm.get("api_key", ""),
            timeout=float(llm.get("timeout", 60.0)),
        )
    )
    return config
