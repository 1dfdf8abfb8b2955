"""Regenerate datasets/synthetic43 (43 synthetic hearing cases).

Every case carries a hand-written derivation of its expected solver status.
The derivations reason only from the bundled rules and the FPL fixture
table; they never consult the solver.

    python3 tools/build_synthetic43.py
"""

from __future__ import annotations

import json
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "datasets" / "synthetic43"

FPL = {1: 1632, 2: 2215, 3: 2798, 4: 3380, 5: 3963, 6: 4546}

CASES: list[dict] = []


def case(cid, category, legality, facts, explanation, status, cites, derivation, violated=None):
    CASES.append({
        "case_id": cid,
        "category": category,
        "action": "denial",
        "facts": facts,
        "explanation": explanation,
        "ground_truth": {"legality": legality,
                         "violated_citations": violated if violated is not None else cites},
        "expected": {"status": status, "core_citations": cites, "derivation": derivation},
    })


# -- Income: 4 upheld, 3 overturned -------------------------------------------
income_text = [
    "Your gross monthly income exceeds the income limit for your household size.",
    "Your household earnings are over the limit.",
    "Your income is too high.",
    "We found that your monthly income is above the allowed limit.",
]
for i, (size, gross) in enumerate([(1, 2100), (2, 2600.5), (3, 3125), (4, 4010.75)]):
    case(f"INC-{i + 1:02d}", "Income", "upheld",
         {"GrossIncome": gross, "HouseholdSize": size, "IncomeThreshold": FPL[size]},
         income_text[i], "SAT", [],
         f"Claim GrossIncome > IncomeThreshold holds ({gross} > {FPL[size]}); the FPL rule's "
         f"antecedent {gross} <= FPL({size}) is false, so nothing forces eligibility. Denial consistent.")
for i, (size, gross, cite) in enumerate([(2, 2015.13, "MPP 63-502.32"), (3, 2450, "MPP 63-502.36"),
                                         (4, 3380, "MPP 63-502.32")]):
    case(f"INC-{i + 5:02d}", "Income", "overturned",
         {"GrossIncome": gross, "HouseholdSize": size, "IncomeThreshold": FPL[size]},
         income_text[i], "UNSAT", ["MPP 63-502.32"],
         f"Claim GrossIncome > IncomeThreshold is false ({gross} <= {FPL[size]}). The claim is "
         "anchored to the gross income limit rule (shares GrossIncome and IncomeThreshold).",
         violated=[cite])

# -- Residency: 5 upheld, 4 overturned ----------------------------------------
county_text = [
    "You applied in a different county than where you live.",
    "Eligibility denied - jurisdiction mismatch.",
    "You must live in the county you file in.",
    "Address on file belongs to another county.",
]
case("RES-01", "Residency", "upheld",
     {"Applicant_ResidenceCounty": "Alameda", "Applicant_ApplicationCounty": "Fresno"},
     county_text[0], "SAT", [], "Counties differ, so the mismatch claim holds; denial consistent.")
case("RES-02", "Residency", "upheld",
     {"Applicant_ResidenceCounty": "Kern", "Applicant_ApplicationCounty": "Tulare"},
     county_text[1], "SAT", [], "Counties differ; the jurisdiction mismatch claim holds.")
case("RES-03", "Residency", "upheld", {"ResidencyVerificationProvided": False},
     "You did not provide proof of residency.", "SAT", [],
     "Verification is absent, matching the claim Not(ResidencyVerificationProvided).")
case("RES-04", "Residency", "upheld", {"Resident": False},
     "You are not a resident of this county.", "SAT", [],
     "Resident is false, matching the claim Not(Resident).")
case("RES-05", "Residency", "upheld",
     {"Applicant_ResidenceState": "Nevada", "AdministeringState": "California"},
     "You live in another state.", "SAT", [], "States differ; the state mismatch claim holds.")
case("RES-06", "Residency", "overturned",
     {"Applicant_ResidenceCounty": "Sacramento", "Applicant_ApplicationCounty": "Sacramento"},
     county_text[2], "UNSAT", ["MPP 63-401.1"],
     "Both counties are Sacramento, so ResidenceCounty != ApplicationCounty is false; anchored to "
     "the county residency requirement.")
case("RES-07", "Residency", "overturned",
     {"Applicant_ResidenceCounty": "Yolo", "Applicant_ApplicationCounty": "Yolo"},
     county_text[3], "UNSAT", ["MPP 63-401.1"], "Same county on both sides; the mismatch claim is false.")
case("RES-08", "Residency", "overturned", {"ResidencyVerificationProvided": True},
     "You did not provide proof of residency.", "UNSAT", ["MPP 63-401.1"],
     "Verification was provided, contradicting the claim Not(ResidencyVerificationProvided).")
case("RES-09", "Residency", "overturned", {"Resident": True},
     "You are not a resident of this county.", "UNSAT", ["MPP 63-300"],
     "Resident is true, contradicting the claim Not(Resident).")

# -- Citizenship: 5 upheld, 4 overturned --------------------------------------
cit_full = "You are not a citizen and did not provide verification of your citizenship status."
cit_short = "You are not a U.S. citizen."
for i, text in enumerate([cit_full, cit_full, cit_full, cit_short, cit_short]):
    case(f"CIT-{i + 1:02d}", "Citizenship", "upheld",
         {"CitizenStatus": False, "VerificationProvided": False}, text, "SAT", [],
         "CitizenStatus and VerificationProvided are both false, so every claimed condition holds.")
for i, (facts, text) in enumerate([
        ({"CitizenStatus": True, "VerificationProvided": False}, cit_full),
        ({"CitizenStatus": False, "VerificationProvided": True}, cit_full),
        ({"CitizenStatus": True, "VerificationProvided": True}, cit_full),
        ({"CitizenStatus": True, "VerificationProvided": False}, cit_short)]):
    case(f"CIT-{i + 6:02d}", "Citizenship", "overturned", facts, text, "UNSAT", ["MPP 63-405.1"],
         "At least one conjunct of the claim (not a citizen, no verification) is false under the facts.")

# -- Resources: 5 upheld, 3 overturned ----------------------------------------
res_text = [
    "Your household resources exceed the resource limit.",
    "Your countable assets are over the limit.",
    "Your savings are too high.",
]
for i, (held, limit) in enumerate([(3500, 3000), (2750.25, 2750), (4800, 4500), (3001, 3000),
                                   (9000, 4500)]):
    case(f"RSC-{i + 1:02d}", "Resources", "upheld",
         {"HouseholdResources": held, "ResourceThreshold": limit}, res_text[i % 3], "SAT", [],
         f"{held} > {limit}, so the claimed resource excess holds.")
for i, (held, limit, cite) in enumerate([(2500, 3000, "MPP 63-501.3"), (3000, 3000, "MPP 63-501.5"),
                                         (1200.5, 4500, "MPP 63-501.3")]):
    case(f"RSC-{i + 6:02d}", "Resources", "overturned",
         {"HouseholdResources": held, "ResourceThreshold": limit}, res_text[i % 3], "UNSAT",
         ["MPP 63-501.3"], f"{held} <= {limit}, so the claimed excess is false; anchored to the "
         "resource limit rule.", violated=[cite])

# -- Student: 5 upheld, 5 overturned ------------------------------------------
stu_full = "You are a student and do not meet any student exemption."
stu_alt = "You are enrolled in college and do not qualify for an exemption."
for i in range(5):
    case(f"STU-{i + 1:02d}", "Student", "upheld",
         {"StudentFlag": True, "MeetsStudentExemption": False}, stu_full if i % 2 == 0 else stu_alt,
         "SAT", [], "Student without an exemption: the claim And(StudentFlag, Not(MeetsStudentExemption)) holds.")
for i in range(4):
    case(f"STU-{i + 6:02d}", "Student", "overturned",
         {"StudentFlag": True, "MeetsStudentExemption": True}, stu_full if i % 2 == 0 else stu_alt,
         "UNSAT", ["MPP 63-406"], "The exemption is met, so Not(MeetsStudentExemption) in the claim is false.")
case("STU-10", "Student", "overturned", {"StudentFlag": True},
     "You are enrolled as a student.", "SAT", [],
     "The notice omits the exemption condition and the case record carries no exemption fact; the "
     "claim StudentFlag holds and MeetsStudentExemption stays free, so the set is consistent. The "
     "hearing overturned the denial on the exemption, which the notice never raised: this is the "
     "one expected disagreement with the ruling.",
     violated=["MPP 63-406"])


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.json"):
        old.unlink()
    for c in CASES:
        (OUT / f"{c['case_id']}.json").write_text(json.dumps(c, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {len(CASES)} cases to {OUT}")


if __name__ == "__main__":
    main()
