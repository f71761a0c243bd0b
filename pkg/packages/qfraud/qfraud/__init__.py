"""qfraud: hybrid quantum-classical LSTM toolkit for fraud detection."""

__version__ = "0.1.0"
