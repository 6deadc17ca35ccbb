"""Shared field fixtures for the test suite."""

from __future__ import annotations

import pytest

from ulrich_forge import FieldSpec


@pytest.fixture
def q():
    return FieldSpec.rationals()


@pytest.fixture
def qi():
    return FieldSpec.gaussian_rationals()


@pytest.fixture
def f13():
    return FieldSpec.prime(13)


@pytest.fixture
def f101():
    return FieldSpec.prime(101)


@pytest.fixture
def e13():
    return FieldSpec.quadratic(13)
