"""
Ponto de entrada de ``python -m polycone``.

Delega imediatamente para :func:`polycone.cli.main`, que constrói o parser
argparse e despacha para o subcomando correto.

Uso::

    python -m polycone --help
    python -m polycone hilbert --input cone.json
    python -m polycone selftest --quick
"""

from polycone.cli import main

if __name__ == "__main__":
    main()
