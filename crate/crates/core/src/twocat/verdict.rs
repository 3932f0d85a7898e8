use serde::{Deserialize, Serialize};

/// Outcome of a decision procedure.
///
/// A positive verdict carries `witnesses`, a negative one carries a
/// `counterexample`; never both. Sub-verdicts checked as part of the same
/// property are listed in `parts`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub property: String,
    pub outcome: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witnesses: Option<Vec<Witness>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub parts: Vec<Verdict>,
}

impl Verdict {
    pub fn positive(property: impl Into<String>, witnesses: Vec<Witness>) -> Verdict {
        Verdict {
            property: property.into(),
            outcome: true,
            witnesses: Some(witnesses),
            counterexample: None,
            parts: Vec::new(),
        }
    }

    pub fn negative(property: impl Into<String>, counterexample: Counterexample) -> Verdict {
        Verdict {
            property: property.into(),
            outcome: false,
            witnesses: None,
            counterexample: Some(counterexample),
            parts: Vec::new(),
        }
    }

    /// Combines independent conditions: positive iff all are; a negative
    /// result reports the first failing part's counterexample.
    pub fn all(property: impl Into<String>, parts: Vec<Verdict>) -> Verdict {
        let property = property.into();
        match parts.iter().find(|p| !p.outcome) {
            Some(bad) => {
                let c = bad.first_counterexample().cloned().unwrap_or_else(|| Counterexample {
                    condition: bad.property.clone(),
                    instance: Vec::new(),
                    searched: 0,
                    detail: "sub-verdict failed".into(),
                });
                Verdict {
                    property,
                    outcome: false,
                    witnesses: None,
                    counterexample: Some(c),
                    parts,
                }
            }
            None => Verdict {
                property,
                outcome: true,
                witnesses: Some(Vec::new()),
                counterexample: None,
                parts,
            },
        }
    }

    pub fn holds(&self) -> bool {
        self.outcome
    }

    /// The counterexample of this verdict or of its first failing part.
    pub fn first_counterexample(&self) -> Option<&Counterexample> {
        self.counterexample
            .as_ref()
            .or_else(|| self.parts.iter().find_map(|p| p.first_counterexample()))
    }

    /// All witnesses of this verdict and its parts.
    pub fn all_witnesses(&self) -> Vec<&Witness> {
        let mut out: Vec<&Witness> = self.witnesses.iter().flatten().collect();
        for p in &self.parts {
            out.extend(p.all_witnesses());
        }
        out
    }

    pub fn well_formed(&self) -> bool {
        self.witnesses.is_some() == self.outcome
            && self.counterexample.is_some() != self.outcome
            && self.parts.iter().all(Verdict::well_formed)
    }
}

/// The first instance of a universally quantified condition with no
/// witness, plus the size of the exhausted search space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub condition: String,
    pub instance: Vec<String>,
    pub searched: usize,
    pub detail: String,
}

/// Data realizing one existential. Cells are referred to by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `left: a → apex`, `right: b → apex`.
    Span {
        a: String,
        b: String,
        apex: String,
        left: String,
        right: String,
    },
    /// `cell: extend∘first ⇒ extend∘second`.
    Insertion {
        first: String,
        second: String,
        extend: String,
        cell: String,
        invertible: bool,
    },
    /// `extend * first = extend * second`.
    Equification {
        first: String,
        second: String,
        extend: String,
    },
    /// Cofinality: `arrow: object → image` with `image = F(preimage)`.
    Reach {
        object: String,
        preimage: String,
        arrow: String,
    },
    /// Cofinality: `cell: F(along)∘first ⇒ F(along)∘second`.
    CofinalInsertion {
        first: String,
        second: String,
        along: String,
        cell: String,
        invertible: bool,
    },
    /// Cofinality: `F(along) * first = F(along) * second`.
    CofinalEquification {
        first: String,
        second: String,
        along: String,
    },
    /// `phi: right∘arrow ⇒ left`.
    Triangle {
        arrow: String,
        left: String,
        right: String,
        phi: String,
    },
    /// Free-form record used by composite checks.
    Note { text: String },
}
