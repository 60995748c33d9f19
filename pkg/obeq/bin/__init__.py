"""
The `obeq.bin` package contains the command-line entry points.
Every command module has a main() function that can be invoked in-place of invoking
the file directly, and returns the exit code.
For example, the tabulate command can be invoked on the command line like:
```
python3 -m obeq.bin.tabulate --gamma 2,3,1 --out tables
```
through the dispatcher:
```
python3 -m obeq.bin.cli tabulate --gamma 2,3,1 --out tables
```
or through Python like:
```
from obeq.bin import tabulate
tabulate.main(['--gamma', '2,3,1', '--out', 'tables'])
```
"""
