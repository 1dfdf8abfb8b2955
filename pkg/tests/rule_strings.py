"""Reference rule strings the parser must accept, grouped by origin."""

# (citation, concepts, rule) rows of the TBox summary
SUMMARY_RULES = [
    ("MPP 63-401.1", ("Residency_HouseholdLocation", "Residency_ApplicationCounty"),
     "Implies(And(Residency_HouseholdLocation, Residency_ApplicationCounty), Applicant_Eligible)"),
    ("MPP 63-502.36", ("GrossIncome", "IncomeThreshold"),
     "Implies(GrossIncome > IncomeThreshold, Not(Applicant_Eligible))"),
    ("MPP 63-405.1", ("CitizenStatus", "VerificationProvided"),
     "Implies(And(Not(CitizenStatus), Not(VerificationProvided)), Not(Applicant_Eligible))"),
    ("MPP 63-406", ("StudentFlag", "MeetsStudentExemption"),
     "Implies(And(StudentFlag, Not(MeetsStudentExemption)), Not(Applicant_Eligible))"),
    ("MPP 63-501.3", ("HouseholdResources", "ResourceThreshold"),
     "Implies(HouseholdResources > ResourceThreshold, Not(Applicant_Eligible))"),
]

# the formalization worked example, in its one-line and indented layouts
FORMALIZED_RESIDENCY = [
    "Implies(And(Residency_HouseholdLocation,\n"
    "                           Residency_ApplicationCounty),\n"
    "                       Applicant_Eligible)",
    "Implies(\n        And(\n          Residency_HouseholdLocation,\n"
    "          Residency_ApplicationCounty\n        ),\n        Applicant_Eligible\n      )",
]

# the two-clause explanation of the worked ABox case
WORKED_CASE_RULES = [
    "Implies(GrossIncome > IncomeThreshold, Not(Applicant_Eligible))",
    "Implies(Not(ResidencyVerificationProvided), Not(Applicant_Eligible))",
]

# rules used in the evaluation walkthrough (applied FPL style included)
EVALUATION_RULES = [
    "Implies(GrossIncome <= FPL(HouseholdSize), Applicant_Eligible)",
    "Implies(Not(Resident), Not(Applicant_Eligible))",
    "Implies(Or(Age >= 60, HasDisabilityStatus), Applicant_Eligible)",
]

# the rule-file excerpt with full Appendix-style records
EXAMPLE_RULE_FILE = [
    {
        "id": "Rule_ResidencyRequirement",
        "citation": "MPP 63-401.1",
        "hasText": "A household must reside in the county in which it files an application for participation.",
        "class": "Residency",
        "subclass": "CountyResidency",
        "appliesTo": ["Applicant_ResidenceCounty", "Applicant_ApplicationCounty"],
        "determines": ["Applicant_Eligible"],
        "hasLogic": "Implies(Applicant_ResidenceCounty != Applicant_ApplicationCounty, Not(Applicant_Eligible))",
        "hasModality": "Obligation",
        "conceptType": "Boolean",
    },
    {
        "id": "Rule_StateResidencyRequirement",
        "citation": "MPP 63-401.1",
        "hasText": "A household must reside within the administering state to qualify for participation.",
        "class": "Residency",
        "subclass": "StateResidency",
        "appliesTo": ["Applicant_ResidenceState", "AdministeringState"],
        "determines": ["Applicant_Eligible"],
        "hasLogic": "Implies(Applicant_ResidenceState != AdministeringState, Not(Applicant_Eligible))",
        "hasModality": "Obligation",
        "conceptType": "Boolean",
    },
]

ALL_RULE_STRINGS = ([r for _, _, r in SUMMARY_RULES] + FORMALIZED_RESIDENCY + WORKED_CASE_RULES
                    + EVALUATION_RULES + [d["hasLogic"] for d in EXAMPLE_RULE_FILE])

# five notice phrasings of one county-mismatch claim
COUNTY_MISMATCH_VARIANTS = [
    "You applied in a different county than where you live.",
    "Eligibility denied - jurisdiction mismatch.",
    "You must live in the county you file in.",
    "Address on file belongs to another county.",
    "Applicant's household is located outside this county.",
]
