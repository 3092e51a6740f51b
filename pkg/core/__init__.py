# Núcleo: álgebra sobre GF(2), códigos lineares e verificação LCD
__version__ = "1.0.0"
