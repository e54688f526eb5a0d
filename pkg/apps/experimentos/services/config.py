# apps/experimentos/services/config.py
"""
Configuración de un experimento: valores por defecto de settings.AGENDA,
luego el archivo --config (JSON) y por último las flags de la línea de
comandos. El resultado se valida con ExperimentConfigSerializer.
"""
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Optional

from django.conf import settings
from rest_framework import serializers
from rest_framework.parsers import JSONParser

from apps.experimentos.simgen import REGIMES

EXPERIMENTS = ("prioritization", "mispriority", "congestion", "bench")


def default_n_max(m: int, k: int) -> int:
    """⌈1.1·m·k⌉ en aritmética entera."""
    return (11 * m * k + 9) // 10


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    m: int
    k: int
    n_min: int
    n_max: int
    delta: float
    trial_divisor: int
    seed: int
    regime: str
    capacities: tuple
    days: int
    output_dir: str
    footfall: Optional[str] = None
    with_delays: bool = False
    bench_k: int = 12
    bench_m: tuple = (1, 2, 4, 6, 8, 10, 12, 14)
    bench_trials: int = 1

    @property
    def n_range(self) -> range:
        return range(self.n_min, self.n_max + 1)

    def trials(self, n: int) -> int:
        return max(1, 10 * n // self.trial_divisor)

    def output_path(self, name: str) -> Path:
        return Path(self.output_dir) / name


class ExperimentConfigSerializer(serializers.Serializer):
    experiment = serializers.ChoiceField(choices=EXPERIMENTS)
    m = serializers.IntegerField(min_value=1)
    k = serializers.IntegerField(min_value=1)
    n_min = serializers.IntegerField(min_value=2, default=2)
    n_max = serializers.IntegerField(min_value=2, allow_null=True, default=None)
    delta = serializers.FloatField()
    trial_divisor = serializers.IntegerField(min_value=1)
    seed = serializers.IntegerField(min_value=0)
    regime = serializers.ChoiceField(choices=REGIMES)
    capacities = serializers.ListField(child=serializers.IntegerField(min_value=1), allow_empty=False)
    days = serializers.IntegerField(min_value=1)
    output_dir = serializers.CharField()
    footfall = serializers.CharField(allow_null=True, default=None)
    with_delays = serializers.BooleanField(default=False)
    bench_k = serializers.IntegerField(min_value=1)
    bench_m = serializers.ListField(child=serializers.IntegerField(min_value=1), allow_empty=False)
    bench_trials = serializers.IntegerField(min_value=1)

    def validate_delta(self, value):
        if not 0.0 < value < 1.0:
            raise serializers.ValidationError("delta debe estar en (0, 1).")
        return value

    def validate(self, data):
        unknown = sorted(set(self.initial_data) - set(self.fields))
        if unknown:
            raise serializers.ValidationError(f"Claves desconocidas: {', '.join(unknown)}.")

        upper = default_n_max(data["m"], data["k"])
        if data.get("n_max") is None:
            data["n_max"] = upper
        if not 2 <= data["n_min"] <= data["n_max"] <= upper:
            raise serializers.ValidationError(
                {"n_max": f"El rango de n debe cumplir 2 ≤ n_min ≤ n_max ≤ {upper} (m={data['m']}, k={data['k']})."}
            )
        return data

    def create(self, validated_data):
        data = dict(validated_data)
        data["capacities"] = tuple(data["capacities"])
        data["bench_m"] = tuple(data["bench_m"])
        return ExperimentConfig(**data)


def read_config_file(path: Path) -> dict:
    """Lanza OSError, ParseError (JSON ilegible) o ValidationError (no es un objeto)."""
    data = JSONParser().parse(io.BytesIO(Path(path).read_bytes()))
    if not isinstance(data, dict):
        raise serializers.ValidationError("El archivo de configuración debe ser un objeto JSON.")
    return data


def build_config(
    experiment: str,
    overrides: Optional[Mapping[str, Any]] = None,
    config_file: Optional[Path] = None,
) -> ExperimentConfig:
    merged: dict[str, Any] = {key.lower(): value for key, value in settings.AGENDA.items()}
    if config_file is not None:
        merged.update(read_config_file(config_file))
    merged.update({key: value for key, value in (overrides or {}).items() if value is not None})
    merged["experiment"] = experiment

    ser = ExperimentConfigSerializer(data=merged)
    ser.is_valid(raise_exception=True)
    return ser.save()
