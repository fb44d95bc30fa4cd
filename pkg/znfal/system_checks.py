"""
System checks module for zn-falconer runtime dependencies.

This module verifies that the Python interpreter and the numeric
libraries (click, numpy, sympy) are installed with supported versions.
"""

import platform
import re
import sys
from importlib import metadata
from typing import Any, Dict, Optional, Tuple

from znfal.exceptions import ZnFalException

REQUIRED_PACKAGES = {
    'click': (8, 0),
    'numpy': (1, 24),
    'sympy': (1, 12),
}


class SystemCheckError(ZnFalException):
    """Exception raised when system checks fail."""
    pass


def get_os_info() -> Dict[str, str]:
    """
    Get operating system information.

    Returns:
        Dictionary with OS name, version, and architecture
    """
    return {
        "system": platform.system(),
        "release": platform.release(),
        "version": platform.version(),
        "machine": platform.machine(),
        "platform": platform.platform()
    }


def get_package_version(package: str) -> Optional[str]:
    """
    Get the installed version of a distribution.

    Args:
        package: Distribution name (e.g., 'numpy')

    Returns:
        Version string or None if not installed
    """
    try:
        return metadata.version(package)
    except metadata.PackageNotFoundError:
        return None


def parse_version(version: str) -> Tuple[int, ...]:
    """Leading numeric components of a version string ('1.26.4rc1' -> (1, 26, 4))."""
    parts = []
    for piece in version.split('.'):
        match = re.match(r'\d+', piece)
        if not match:
            break
        parts.append(int(match.group()))
    return tuple(parts)


def check_python_packages() -> Dict[str, Dict[str, Any]]:
    """
    Check installed versions of every runtime dependency.

    Returns:
        Dictionary with status of each package:
        {
            'numpy': {'installed': bool, 'version': str, 'minimum': str, 'supported': bool},
            ...
        }
    """
    results = {}
    for package, minimum in REQUIRED_PACKAGES.items():
        version = get_package_version(package)
        results[package] = {
            'installed': version is not None,
            'version': version,
            'minimum': '.'.join(str(x) for x in minimum),
            'supported': version is not None and parse_version(version) >= minimum,
        }
    return results


def check_python_version(min_version: Tuple[int, int] = (3, 10)) -> bool:
    """
    Check if Python version meets minimum requirements.

    Args:
        min_version: Minimum required version as tuple (major, minor)

    Returns:
        True if version is sufficient

    Raises:
        SystemCheckError: If Python version is too old
    """
    current = sys.version_info[:2]

    if current < min_version:
        raise SystemCheckError(
            f"Python {min_version[0]}.{min_version[1]}+ required. "
            f"Current version: {current[0]}.{current[1]}"
        )

    return True


def verify_system_requirements(verbose: bool = False) -> bool:
    """
    Verify all system requirements are met.

    Args:
        verbose: If True, print detailed information

    Returns:
        True if all requirements are met

    Raises:
        SystemCheckError: If Python or a package is missing or too old
    """
    check_python_version()
    os_info = get_os_info()
    packages = check_python_packages()

    if verbose:
        print("=" * 60)
        print("System Information:")
        print("=" * 60)
        print(f"OS: {os_info['system']} {os_info['release']}")
        print(f"Python: {sys.version_info.major}.{sys.version_info.minor}.{sys.version_info.micro}")
        print()
        print("=" * 60)
        print("Python packages:")
        print("=" * 60)

    problems = []
    for package, status in packages.items():
        if verbose:
            if status['supported']:
                print(f"✓ {package:<8} : {status['version']}")
            elif status['installed']:
                print(f"✗ {package:<8} : {status['version']} (>= {status['minimum']} required)")
            else:
                print(f"✗ {package:<8} : NOT FOUND")
        if not status['supported']:
            problems.append(package)

    if problems:
        raise SystemCheckError(
            f"Missing or outdated packages: {', '.join(problems)}. "
            f"Run: pip install -r requirements.txt"
        )

    if verbose:
        print()
        print("✓ All system requirements met!")
        print()

    return True
