"""Driving the verification suites and emitters from Python through the CLI entry point."""

from jacobi_geometry.cli import main

print("$ jacobi-geometry emit metric --space SL2R --params alpha=1,beta=1 --point 0,1,0")
main(["emit", "metric", "--space", "SL2R", "--params", "alpha=1,beta=1", "--point", "0,1,0"])

print("\n$ jacobi-geometry run reductivity --format text")
code = main(["run", "reductivity", "--format", "text", "--samples", "5"])
print("exit code", code)

print("\n$ jacobi-geometry emit geovec-table --format csv --with-lemma")
main(["emit", "geovec-table", "--format", "csv", "--with-lemma"])
