"""Nox sessions for ndc2."""
from pathlib import Path
import shutil

import nox

nox.options.sessions = ["lint", "tests", "docs"]
locations = ["ndc2", "tests", "noxfile.py"]
build_dir = Path("docs", "_build")

# Verification checks run by the ``checks`` session, fastest first.
check_names = [
    "relations",
    "classical-limit",
    "numeric",
    "condition10",
    "confluence",
    "covariance",
    "derivative-rules",
]


def _sphinx(session, builder):
    if build_dir.exists():
        shutil.rmtree(build_dir)
    session.run("sphinx-build", "-b", builder, "-v", "docs", str(build_dir))


@nox.session
def lint(session):
    """Lint using flake8."""
    args = session.posargs or locations
    session.install(
        "flake8", "flake8-black", "flake8-docstrings", "flake8-isort", "flake8-bugbear"
    )
    session.run("flake8", "--max-line-length", "100", *args)


@nox.session
def tests(session):
    """Run the test suite with coverage."""
    session.install("-r", "requirements.tests.txt")
    session.run("pytest", "--cov=ndc2", "--cov-report=term-missing", *session.posargs)


@nox.session
def checks(session):
    """Run every verification check from the command line."""
    session.install("sympy", "voluptuous")
    for name in session.posargs or check_names:
        session.run("python", "-m", "ndc2", "check", name)


@nox.session
def docs(session):
    """Build the HTML documentation."""
    session.install("-r", "docs/requirements.docs.txt", "-r", "requirements.tests.txt")
    _sphinx(session, "html")


@nox.session
def linkcheck(session):
    """Check links in documentation."""
    session.install("-r", "docs/requirements.docs.txt")
    _sphinx(session, "linkcheck")
