"""python -m divgaps."""

from divgaps.cli.main import main

main()
