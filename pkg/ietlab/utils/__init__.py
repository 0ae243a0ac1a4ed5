from .decorators import *
from .errors import *
