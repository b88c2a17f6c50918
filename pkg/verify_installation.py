#!/usr/bin/env python3
"""
orbitquant installation check

Confirms the interpreter, the numeric stack, the source tree and the config
file, then runs one exact star product and one FFT as a smoke test.
"""

import importlib
import os
import sys

REQUIRED_PACKAGES = [("numpy", "numpy"), ("PyYAML", "yaml"), ("psutil", "psutil")]
OPTIONAL_PACKAGES = [("pytest", "pytest")]
SOURCE_MODULES = ("errors", "symalg", "grammar", "liealg", "orbits", "moyal", "diffop", "operators",
                  "grid", "homology", "reports", "verification", "config", "logger", "resource_manager", "cli")
ROOT = os.path.dirname(os.path.abspath(__file__))


def print_header(text):
    print("\n" + "-" * 64)
    print(f"  {text}")
    print("-" * 64)


def print_status(check, status, message=""):
    """One aligned result line; returns status so callers can fold results"""
    print(f"  {'✓' if status else '✗'} {check:.<44} {'ok' if status else 'MISSING'}")
    if message:
        print(f"      {message}")
    return status


def package_status(label, module_name):
    try:
        module = importlib.import_module(module_name)
    except ImportError as e:
        return print_status(label, False, str(e))
    return print_status(label, True, getattr(module, "__version__", ""))


def source_status():
    missing = [m for m in SOURCE_MODULES if not os.path.isfile(os.path.join(ROOT, "src", f"{m}.py"))]
    ok = print_status(f"src/ ({len(SOURCE_MODULES)} modules)", not missing,
                      f"missing: {', '.join(missing)}" if missing else "")
    for name in ("main.py", "config.yaml", "requirements.txt"):
        ok &= print_status(name, os.path.isfile(os.path.join(ROOT, name)))
    return ok


def smoke_status():
    """Load the config and compute p * exp(q) and an FFT derivative"""
    sys.path.insert(0, ROOT)
    try:
        import numpy as np

        from src.config import ConfigManager
        from src.grammar import format_expr, parse_expr
        from src.moyal import PoissonStructure, star

        config = ConfigManager(os.path.join(ROOT, "config.yaml"))
        ok = print_status("config.yaml loads", True,
                          f"profile {config.get('verification', 'profile')}, h = {config.get_planck()}")
        P = PoissonStructure.standard()
        value = format_expr(star(parse_expr("p", P.varset), parse_expr("exp(q)", P.varset), P).value)
        ok &= print_status("star product", value == "p*exp(q) + (-1/2 i)*exp(q)", value)
        x = np.linspace(0, 2 * np.pi, 64, endpoint=False)
        d = np.fft.ifft(1j * np.fft.fftfreq(64, 1 / 64) * np.fft.fft(np.sin(x))).real
        ok &= print_status("spectral derivative", bool(np.allclose(d, np.cos(x))))
        return ok
    except Exception as e:
        return print_status("smoke test", False, f"{type(e).__name__}: {e}")


def main():
    print("orbitquant installation check")

    print_header("Interpreter")
    v = sys.version_info
    ok = print_status("Python >= 3.8", v >= (3, 8), f"{v.major}.{v.minor}.{v.micro}")

    print_header("Packages")
    for label, module_name in REQUIRED_PACKAGES:
        ok &= package_status(label, module_name)
    for label, module_name in OPTIONAL_PACKAGES:
        package_status(f"{label} (tests only)", module_name)

    print_header("Source tree")
    ok &= source_status()

    if ok:
        print_header("Smoke test")
        ok &= smoke_status()

    print_header("Result")
    if not ok:
        print("  Some checks failed. Try: pip install -r requirements.txt, and run from the project root.")
        return 1
    print("  Ready. Next: python main.py verify --scope all")
    return 0


if __name__ == "__main__":
    sys.exit(main())
