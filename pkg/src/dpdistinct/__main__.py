from dpdistinct.cli import main

main()
