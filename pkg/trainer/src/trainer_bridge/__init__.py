"""Fine-tune a pretrained transformer on exported comment samples.

Files are the only interface: this package reads the sample directory
contract (manifest.json, records.jsonl, label_spaces.json, *.ids) and
writes the prediction CSV contract plus a run log. It shares no code
with the toolkit that produces those files.
"""

__version__ = "0.1.0"

from .config import TrainJobConfig
from .bridge import train_and_predict

__all__ = ["TrainJobConfig", "train_and_predict"]
