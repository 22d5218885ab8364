from .sitefile.cli import main

main()
