//! JSON documents for models, proofs and generation structures.
//!
//! Formulas and terms are stored as grammar text. Every document converts
//! to and from its library value; saving a loaded document reproduces it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use sfq_core::generation::{GenViolation, GenerationStructure};
use sfq_core::kripke::{ClassicalStructure, Frame, Interpretation, IntuitionisticModel, ModelViolation, RawIntuitionisticModel, RawModel, StrictFinModel};
use sfq_core::proofs::{Derivation, Rule, Step, StructureError};
use sfq_core::syntax::{parse_term, parse_with, render, ElemId, Formula, ParseError, Signature, SignatureError, Symbols, Term};

/// A document that could not be turned into a library value.
#[derive(Debug)]
pub enum DocError {
    Json(serde_json::Error),
    Signature(SignatureError),
    Model(Vec<ModelViolation>),
    Generation(Vec<GenViolation>),
    Frame(String),
    Formula { at: String, error: ParseError },
    UnknownRule { step: String, rule: String },
    UnknownStep { step: String, premise: String },
    Structure(StructureError),
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocError::Json(e) => write!(f, "malformed JSON: {e}"),
            DocError::Signature(e) => write!(f, "bad signature: {e}"),
            DocError::Model(v) => {
                f.write_str("invalid model:")?;
                for e in v {
                    write!(f, "\n  {e}")?;
                }
                Ok(())
            }
            DocError::Generation(v) => {
                f.write_str("invalid generation structure:")?;
                for e in v {
                    write!(f, "\n  {e}")?;
                }
                Ok(())
            }
            DocError::Frame(e) => write!(f, "bad generation order: {e}"),
            DocError::Formula { at, error } => write!(f, "{at}: {error}"),
            DocError::UnknownRule { step, rule } => write!(f, "step `{step}`: unknown rule `{rule}`"),
            DocError::UnknownStep { step, premise } => write!(f, "step `{step}`: premise `{premise}` is not an earlier step"),
            DocError::Structure(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for DocError {}

impl From<serde_json::Error> for DocError {
    fn from(e: serde_json::Error) -> Self {
        DocError::Json(e)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, DocError> {
    Ok(serde_json::from_str(text)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolDoc {
    pub name: String,
    pub arity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureDoc {
    #[serde(default)]
    pub constants: Vec<String>,
    #[serde(default)]
    pub functions: Vec<SymbolDoc>,
    /// `E/1` is added when absent.
    #[serde(default)]
    pub predicates: Vec<SymbolDoc>,
}

impl SignatureDoc {
    pub fn from_signature(s: &Signature) -> SignatureDoc {
        let sym = |v: &[(String, usize)]| v.iter().map(|(name, arity)| SymbolDoc { name: name.clone(), arity: *arity }).collect();
        SignatureDoc { constants: s.constants().to_vec(), functions: sym(s.functions()), predicates: sym(s.predicates()) }
    }

    pub fn to_signature(&self) -> Result<Signature, DocError> {
        let sym = |v: &[SymbolDoc]| v.iter().map(|s| (s.name.clone(), s.arity)).collect();
        Signature::new(self.constants.clone(), sym(&self.functions), sym(&self.predicates)).map_err(DocError::Signature)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub id: String,
    pub parent: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueDoc {
    pub args: Vec<ElemId>,
    pub value: ElemId,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpretationDoc {
    #[serde(default)]
    pub constants: BTreeMap<String, ElemId>,
    #[serde(default)]
    pub functions: BTreeMap<String, Vec<ValueDoc>>,
}

impl InterpretationDoc {
    pub fn from_interpretation(j: &Interpretation) -> InterpretationDoc {
        InterpretationDoc {
            constants: j.constants.clone(),
            functions: j
                .functions
                .iter()
                .map(|(f, table)| (f.clone(), table.iter().map(|(args, v)| ValueDoc { args: args.clone(), value: *v }).collect()))
                .collect(),
        }
    }

    pub fn to_interpretation(&self) -> Interpretation {
        Interpretation {
            constants: self.constants.clone(),
            functions: self
                .functions
                .iter()
                .map(|(f, table)| (f.clone(), table.iter().map(|v| (v.args.clone(), v.value)).collect()))
                .collect(),
        }
    }
}

/// Node id to predicate to tuples; absent entries are empty.
pub type ExtensionsDoc = BTreeMap<String, BTreeMap<String, BTreeSet<Vec<ElemId>>>>;

fn prune(ext: &ExtensionsDoc) -> ExtensionsDoc {
    ext.iter()
        .map(|(k, m)| (k.clone(), m.iter().filter(|(_, s)| !s.is_empty()).map(|(p, s)| (p.clone(), s.clone())).collect::<BTreeMap<_, _>>()))
        .filter(|(_, m)| !m.is_empty())
        .collect()
}

fn nodes_doc(nodes: &[(String, Option<String>)]) -> Vec<NodeDoc> {
    nodes.iter().map(|(id, parent)| NodeDoc { id: id.clone(), parent: parent.clone() }).collect()
}

fn nodes_raw(nodes: &[NodeDoc]) -> Vec<(String, Option<String>)> {
    nodes.iter().map(|n| (n.id.clone(), n.parent.clone())).collect()
}

/// A strict finitistic model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub signature: SignatureDoc,
    pub nodes: Vec<NodeDoc>,
    pub domain: Vec<ElemId>,
    #[serde(default)]
    pub interpretation: InterpretationDoc,
    #[serde(default)]
    pub extensions: ExtensionsDoc,
}

impl ModelDocument {
    pub fn from_model(m: &StrictFinModel) -> ModelDocument {
        let raw = m.to_raw();
        ModelDocument {
            signature: SignatureDoc::from_signature(&raw.signature),
            nodes: nodes_doc(&raw.nodes),
            domain: raw.domain,
            interpretation: InterpretationDoc::from_interpretation(&raw.interpretation),
            extensions: prune(&raw.extensions),
        }
    }

    pub fn to_raw(&self) -> Result<RawModel, DocError> {
        Ok(RawModel {
            signature: self.signature.to_signature()?,
            nodes: nodes_raw(&self.nodes),
            domain: self.domain.clone(),
            interpretation: self.interpretation.to_interpretation(),
            extensions: self.extensions.clone(),
        })
    }

    /// Validates the model, listing every violation.
    pub fn to_model(&self) -> Result<StrictFinModel, DocError> {
        self.to_raw()?.validate().map_err(DocError::Model)
    }
}

/// An intuitionistic model with growing domains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntuitionisticDocument {
    pub signature: SignatureDoc,
    pub nodes: Vec<NodeDoc>,
    /// Domain of each node.
    pub domains: BTreeMap<String, Vec<ElemId>>,
    #[serde(default)]
    pub interpretation: InterpretationDoc,
    #[serde(default)]
    pub extensions: ExtensionsDoc,
}

impl IntuitionisticDocument {
    pub fn from_model(m: &IntuitionisticModel) -> IntuitionisticDocument {
        let raw = m.to_raw();
        IntuitionisticDocument {
            signature: SignatureDoc::from_signature(&raw.signature),
            nodes: nodes_doc(&raw.nodes),
            domains: raw.domains,
            interpretation: InterpretationDoc::from_interpretation(&raw.interpretation),
            extensions: prune(&raw.extensions),
        }
    }

    pub fn to_model(&self) -> Result<IntuitionisticModel, DocError> {
        let raw = RawIntuitionisticModel {
            signature: self.signature.to_signature()?,
            nodes: nodes_raw(&self.nodes),
            domains: self.domains.clone(),
            interpretation: self.interpretation.to_interpretation(),
            extensions: self.extensions.clone(),
        };
        raw.validate().map_err(DocError::Model)
    }
}

/// A classical structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassicalDocument {
    pub signature: SignatureDoc,
    pub domain: Vec<ElemId>,
    #[serde(default)]
    pub interpretation: InterpretationDoc,
    #[serde(default)]
    pub extensions: BTreeMap<String, BTreeSet<Vec<ElemId>>>,
}

impl ClassicalDocument {
    pub fn from_structure(c: &ClassicalStructure) -> ClassicalDocument {
        ClassicalDocument {
            signature: SignatureDoc::from_signature(&c.signature),
            domain: c.domain.clone(),
            interpretation: InterpretationDoc::from_interpretation(&c.interpretation),
            extensions: c.extensions.iter().filter(|(_, s)| !s.is_empty()).map(|(p, s)| (p.clone(), s.clone())).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerationDoc {
    pub id: String,
    pub parent: Option<String>,
    pub model: ModelDocument,
}

/// A generation structure: generations in a tree, each a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GStructureDocument {
    pub generations: Vec<GenerationDoc>,
}

impl GStructureDocument {
    pub fn from_structure(g: &GenerationStructure) -> GStructureDocument {
        let order = g.order();
        GStructureDocument {
            generations: (0..g.len())
                .map(|i| GenerationDoc {
                    id: g.name(i).to_string(),
                    parent: order.parent(i).map(|p| g.name(p).to_string()),
                    model: ModelDocument::from_model(g.generation(i)),
                })
                .collect(),
        }
    }

    pub fn to_structure(&self) -> Result<GenerationStructure, DocError> {
        let named: Vec<(String, Option<String>)> = self.generations.iter().map(|w| (w.id.clone(), w.parent.clone())).collect();
        let order = Frame::from_named(&named).map_err(|e| DocError::Frame(e.to_string()))?;
        let mut models = Vec::with_capacity(self.generations.len());
        for w in &self.generations {
            models.push(w.model.to_model()?);
        }
        GenerationStructure::new(order, models).map_err(DocError::Generation)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DischargeDoc {
    /// Premise position, from 0.
    pub premise: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDoc {
    pub id: String,
    pub rule: String,
    pub conclusion: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub discharges: Vec<DischargeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub term: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub var: Option<String>,
}

/// A derivation as a flat list of steps citing earlier steps by id.
///
/// Identifiers starting with `u`..`z` are variables unless a signature is
/// given, in which case undeclared lowercase names are variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<SignatureDoc>,
    pub steps: Vec<StepDoc>,
}

impl ProofDocument {
    pub fn from_derivation(d: &Derivation) -> ProofDocument {
        let steps = d.steps();
        ProofDocument {
            signature: None,
            steps: steps
                .iter()
                .map(|s| StepDoc {
                    id: s.id.clone(),
                    rule: s.rule.tag().to_string(),
                    conclusion: render(&s.conclusion),
                    premises: s.premises.iter().map(|&p| steps[p].id.clone()).collect(),
                    discharges: s.discharges.iter().map(|(premise, label)| DischargeDoc { premise: *premise, label: label.clone() }).collect(),
                    label: s.label.clone(),
                    term: s.term.as_ref().map(|t| t.to_string()),
                    var: s.var.clone(),
                })
                .collect(),
        }
    }

    pub fn to_derivation(&self) -> Result<Derivation, DocError> {
        let sig = match &self.signature {
            Some(s) => Some(s.to_signature()?),
            None => None,
        };
        let symbols = match &sig {
            Some(s) => Symbols::Declared(s),
            None => Symbols::Inferred,
        };
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        let mut steps = Vec::with_capacity(self.steps.len());
        for (i, s) in self.steps.iter().enumerate() {
            let rule = Rule::from_tag(&s.rule).ok_or_else(|| DocError::UnknownRule { step: s.id.clone(), rule: s.rule.clone() })?;
            let conclusion = parse_with(&s.conclusion, symbols)
                .map_err(|error| DocError::Formula { at: format!("step `{}` conclusion", s.id), error })?;
            let mut premises = Vec::with_capacity(s.premises.len());
            for p in &s.premises {
                let j = index.get(p.as_str()).ok_or_else(|| DocError::UnknownStep { step: s.id.clone(), premise: p.clone() })?;
                premises.push(*j);
            }
            let term: Option<Term> = match &s.term {
                Some(t) => Some(parse_term(t, symbols).map_err(|error| DocError::Formula { at: format!("step `{}` term", s.id), error })?),
                None => None,
            };
            let mut step = Step::new(s.id.clone(), rule, conclusion, premises);
            step.discharges = s.discharges.iter().map(|d| (d.premise, d.label.clone())).collect();
            step.label = s.label.clone();
            step.term = term;
            step.var = s.var.clone();
            steps.push(step);
            index.insert(s.id.as_str(), i);
        }
        Derivation::new(steps).map_err(DocError::Structure)
    }
}

/// Parses a formula against a signature, naming the input on failure.
pub fn parse_formula(text: &str, sig: Option<&Signature>, what: &str) -> Result<Formula, DocError> {
    let symbols = match sig {
        Some(s) => Symbols::Declared(s),
        None => Symbols::Inferred,
    };
    parse_with(text, symbols).map_err(|error| DocError::Formula { at: what.to_string(), error })
}
