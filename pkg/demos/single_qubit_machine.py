"""Tour of the single-qubit Otto machine.

Runs a handful of parameter points to their limit cycle, printing the
energy ledger and machine type for each, then checks the engine-regime
efficiency identity eta = 1 - omega_c/omega_h along one parameter line.
"""

from qotto import EngineParameters, ModelId, build_config, iterate_to_limit

BASE = dict(model=ModelId.SINGLE, temp_cold=5.0)

print("=== machine types across the (T_h/T_c, omega_h/omega_c) plane ===")
points = [
    (3.0, 2.0, "hot drive, moderate gap -> engine"),
    (1.4, 3.0, "weak drive, large gap -> cooler"),
    (3.0, 1.05, "tiny compression ratio -> engine, low efficiency"),
]
for temp_ratio, omega_ratio, note in points:
    params = EngineParameters(temp_ratio=temp_ratio, omega_ratio=omega_ratio, **BASE)
    result = iterate_to_limit(build_config(params))
    led = result.ledger
    print(
        f"T_h/T_c={temp_ratio:4.2f} omega_h/omega_c={omega_ratio:4.2f}: "
        f"{result.kind.value:7s} N={result.iterations:2d} "
        f"Q_h={led.q_h:+.5f} Q_c={led.q_c:+.5f} W={led.work:+.5f}   # {note}"
    )

print()
print("=== engine efficiency equals the Otto efficiency at the limit cycle ===")
for omega_ratio in (1.3, 1.6, 2.0, 2.4):
    params = EngineParameters(temp_ratio=3.0, omega_ratio=omega_ratio, **BASE)
    result = iterate_to_limit(build_config(params))
    eta = result.metrics.efficiency
    otto = 1.0 - 1.0 / omega_ratio
    print(
        f"omega_h/omega_c={omega_ratio:4.2f}: eta={eta:.6f} "
        f"1-omega_c/omega_h={otto:.6f} (diff {abs(eta - otto):.2e})"
    )
