import pytest
from fastapi.testclient import TestClient

from sdnemu.api import create_app
from sdnemu.emulator import Emulator


@pytest.fixture
def emu():
    return Emulator()


@pytest.fixture
def client(emu):
    with TestClient(create_app(emu)) as tc:
        yield tc
