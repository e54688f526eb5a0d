# apps/agenda/serializers.py
import io
import math

from rest_framework import serializers
from rest_framework.parsers import JSONParser
from rest_framework.renderers import JSONRenderer

from .mecanismo import Allocation, Instance, Outcome


class ValuationField(serializers.FloatField):
    default_error_messages = {"boolean": "Se esperaba un número, no un booleano."}

    def to_internal_value(self, data):
        # FloatField convierte true en 1.0.
        if isinstance(data, bool):
            self.fail("boolean")
        return super().to_internal_value(data)


class InstanceSerializer(serializers.Serializer):
    m = serializers.IntegerField(min_value=1)
    k = serializers.IntegerField(min_value=1)
    valuations = serializers.ListField(
        child=serializers.ListField(child=ValuationField(min_value=0.0)),
        allow_empty=True,
    )

    def validate_valuations(self, rows):
        for r, row in enumerate(rows):
            if not all(math.isfinite(x) for x in row):
                raise serializers.ValidationError(f"Fila {r}: valoración no finita.")
        return rows

    def validate(self, data):
        m = data["m"]
        for r, row in enumerate(data["valuations"]):
            if len(row) != m:
                raise serializers.ValidationError(
                    {"valuations": f"La fila {r} tiene {len(row)} valores; se esperaban {m}."}
                )
        return data

    def create(self, validated_data):
        return Instance(**validated_data)


class OutcomeSerializer(serializers.Serializer):
    assignment = serializers.ListField(
        child=serializers.IntegerField(min_value=0, allow_null=True), allow_empty=True
    )
    delays = serializers.ListField(child=serializers.FloatField(min_value=0.0), allow_empty=True)
    welfare = serializers.FloatField()

    def validate(self, data):
        if len(data["assignment"]) != len(data["delays"]):
            raise serializers.ValidationError("assignment y delays deben tener el mismo largo.")
        return data

    def create(self, validated_data):
        return Outcome(
            Allocation(validated_data["assignment"]),
            validated_data["delays"],
            validated_data["welfare"],
        )

    def to_representation(self, outcome):
        return outcome.to_dict()


def load_instance(raw: bytes) -> Instance:
    """Lanza ParseError (JSON ilegible) o ValidationError (esquema)."""
    data = JSONParser().parse(io.BytesIO(raw))
    ser = InstanceSerializer(data=data)
    ser.is_valid(raise_exception=True)
    return ser.save()


def load_outcome(raw: bytes) -> Outcome:
    ser = OutcomeSerializer(data=JSONParser().parse(io.BytesIO(raw)))
    ser.is_valid(raise_exception=True)
    return ser.save()


def render_outcome(outcome: Outcome) -> bytes:
    return JSONRenderer().render(OutcomeSerializer(outcome).data)
