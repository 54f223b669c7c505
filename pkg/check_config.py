#!/usr/bin/env python3
"""
Quick configuration check for nilquiver
"""

from dotenv import load_dotenv


def check_nilquiver_config():
    load_dotenv()

    from nilquiver.core.config import settings

    print("🔧 nilquiver Configuration Check")
    print("=" * 50)

    print(f"DEFAULT_FIELD: {settings.DEFAULT_FIELD}")
    print(f"SAMPLING_PRIME: {settings.SAMPLING_PRIME}")
    print(f"DEFAULT_SEED: {settings.DEFAULT_SEED}")
    print(f"DEFAULT_SAMPLES: {settings.DEFAULT_SAMPLES}")
    print(f"WORKERS: {settings.WORKERS}")
    print(f"FILTRATION_CAP: {settings.FILTRATION_CAP}")

    try:
        import numpy
        import sympy
        print(f"✅ numpy: Available (version: {numpy.__version__})")
        print(f"✅ sympy: Available (version: {sympy.__version__})")
    except ImportError as e:
        print(f"❌ Missing package: {e.name}")
        print("💡 Install with: pip install -e .")
        return False

    if not sympy.isprime(settings.SAMPLING_PRIME):
        print(f"\n❌ Error: SAMPLING_PRIME={settings.SAMPLING_PRIME} is not prime!")
        print("💡 Set it in your .env file:")
        print("   SAMPLING_PRIME=1000003")
        return False

    if settings.WORKERS < 1:
        print(f"\n❌ Error: WORKERS must be at least 1, got {settings.WORKERS}")
        return False

    return True


if __name__ == "__main__":
    success = check_nilquiver_config()
    if success:
        print("\n🎉 Configuration looks good!")
    else:
        print("\n❌ Configuration issues found. Please fix them and try again.")
