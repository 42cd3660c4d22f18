from sumprod.cli import main

main()
