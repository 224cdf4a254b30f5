#!/usr/bin/env python3
"""
Setup script for the Legendrian Cost toolkit.
"""
import shutil
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).parent
MIN_PYTHON = (3, 9)
ENV_TEMPLATE = ROOT / "env_example.txt"
ENV_FILE = ROOT / ".env"


def supported_python() -> bool:
    version = sys.version_info[:2]
    if version < MIN_PYTHON:
        print(f"❌ legcost needs Python {MIN_PYTHON[0]}.{MIN_PYTHON[1]}+, found {version[0]}.{version[1]}")
        return False
    print(f"✅ Python {version[0]}.{version[1]}")
    return True


def requirement_names(path: Path = ROOT / "requirements.txt"):
    """Package names pinned in requirements.txt, comments skipped."""
    lines = (line.split("#")[0].strip() for line in path.read_text(encoding="utf-8").splitlines())
    return [line.split("==")[0] for line in lines if line]


def install_requirements() -> bool:
    names = requirement_names()
    print(f"\n📦 Installing {', '.join(names)}...")
    command = [sys.executable, "-m", "pip", "install", "-r", str(ROOT / "requirements.txt")]
    if subprocess.call(command) != 0:
        print("❌ pip failed; the search and formula modules need pydantic, networkx and python-dotenv")
        return False
    return True


def prepare_env() -> bool:
    """Write .env from the template, or list the search settings an existing .env leaves to defaults."""
    if not ENV_TEMPLATE.exists():
        print(f"❌ {ENV_TEMPLATE.name} is missing")
        return False
    if not ENV_FILE.exists():
        shutil.copy(ENV_TEMPLATE, ENV_FILE)
        print(f"\n🔧 Wrote {ENV_FILE.name} with the default search budget")
        return True

    from dotenv import dotenv_values

    missing = sorted(set(dotenv_values(ENV_TEMPLATE)) - set(dotenv_values(ENV_FILE)))
    if missing:
        print(f"\n⚠️  {ENV_FILE.name} does not set {', '.join(missing)}; built-in defaults apply")
    else:
        print(f"\n✅ {ENV_FILE.name} sets every search and service option")
    return True


def validate_setup():
    """Validate the setup."""
    print("\n🔍 Validating setup...")

    required_files = [
        "src/__init__.py",
        "src/config.py",
        "src/front_core.py",
        "src/moves.py",
        "src/isotopy.py",
        "src/cost.py",
        "src/knot_types.py",
        "src/graph.py",
        "src/cli.py",
        "src/api.py",
        "main.py"
    ]

    missing_files = [file_path for file_path in required_files if not (ROOT / file_path).exists()]
    if missing_files:
        print(f"❌ Missing required files: {missing_files}")
        return False

    print("✅ All required files present")

    try:
        sys.path.insert(0, str(ROOT))
        from src.config import config
        from src.front_core import builtin_front, classical_invariants
        print("✅ Configuration module imported successfully")
        if not config.validate():
            print("⚠️  Some budget values in .env are not positive")
        print(f"✅ Unknot invariants: {classical_invariants(builtin_front('unknot')).pair}")
        return True
    except ImportError as e:
        print(f"❌ Failed to import modules: {e}")
        return False


def main():
    """Main setup function."""
    print("🚀 Legendrian Cost toolkit - Setup\n")

    if not supported_python() or not install_requirements():
        sys.exit(1)

    if not prepare_env() or not validate_setup():
        print("\n❌ Setup validation failed. Please check the error messages above.")
        sys.exit(1)

    print("\n🎉 Setup completed successfully!")
    print("\nNext steps:")
    print("1. Adjust search budgets in .env if needed")
    print("2. Run the demo: python demo.py")
    print("3. Try the CLI: python main.py invariants trefoil-r")
    print("4. Start the HTTP service: python main.py serve")
    print("\nFor more information, see README.md")


if __name__ == "__main__":
    main()
