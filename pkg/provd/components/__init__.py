# provd/components/__init__.py

from .hilbert_io import dump_hilbert, hilbert_from_dict, hilbert_to_dict, load_hilbert
from .model_io import dump_model, load_model, model_from_dict, model_to_dict
from .proof_io import dump_proof, load_proof, proof_from_dict, proof_to_dict

__all__ = [
    "dump_hilbert", "hilbert_from_dict", "hilbert_to_dict", "load_hilbert",
    "dump_model", "load_model", "model_from_dict", "model_to_dict",
    "dump_proof", "load_proof", "proof_from_dict", "proof_to_dict",
]
