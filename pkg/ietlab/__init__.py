from .logging import LOGGER
from .core.lab import Lab

app = Lab()
