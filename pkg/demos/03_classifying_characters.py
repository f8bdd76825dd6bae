"""Which principal series are reducible, and into what?

Characters are written as ``m=<int>;cond=<n>;unit=<values>;at_p=<scalar>``.
"""
import json

from padicps.characters import classify, parse_character

examples = {
    "non-integral weight": "c=1/2;cond=0;unit=;at_p=1",
    "trivial smooth part": "m=2;cond=0;unit=;at_p=1",
    "smooth part |t|^2": "m=1;cond=0;unit=;at_p=p^-2",
    "quadratic twist of |t|": "m=0;cond=1;unit=-1;at_p=p^-1",
    "generic unramified": "m=3;cond=0;unit=;at_p=2",
}
for label, spec in examples.items():
    report = classify(parse_character(spec, 5))
    print(f"== {label}: {report.verdict}, case {report.case}, length {report.topological_length}")
    for part in report.constituents:
        print("   ", part)

print(json.dumps(classify(parse_character(examples["smooth part |t|^2"], 5)).to_json(), indent=2))
