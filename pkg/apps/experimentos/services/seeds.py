# apps/experimentos/services/seeds.py
import numpy as np


def trial_rng(root: int, *key: int) -> np.random.Generator:
    """
    Generador independiente para una prueba, derivado de la semilla raíz y
    de una clave entera (por ejemplo régimen, n, número de prueba). El orden
    en que se ejecutan las pruebas no cambia sus números.
    """
    return np.random.default_rng(np.random.SeedSequence(root, spawn_key=tuple(int(x) for x in key)))
