"""
Ponto de entrada do laboratório.

    python main.py symbol --a 2 --gamma 1
    python main.py check all --seed 7
"""
import sys

from cli.commands import main

if __name__ == "__main__":
    sys.exit(main())
