from .EmbeddingInstructions import *
from .EntanglerInstructions import *
from .InitInstructions import *
