//! The JSON presentation format. Vertices are numbered from 1.

use homkoszul_core::field::{Field, FieldKind};
use homkoszul_core::quiver::{Arrow, Quiver, RelPresentation};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Location, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    /// Exact literal: an integer or `p/q`.
    pub coef: String,
    pub path: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDocument {
    pub version: u32,
    pub field: String,
    pub vertices: usize,
    pub arrows: Vec<ArrowSpec>,
    pub s: usize,
    pub relations: Vec<Vec<Term>>,
}

/// Runs `$body` with `$f` bound to the field described by `$kind`.
#[macro_export]
macro_rules! with_field {
    ($kind:expr, |$f:ident| $body:expr) => {
        match $kind {
            homkoszul_core::field::FieldKind::Rational => {
                let $f = homkoszul_core::field::Rationals;
                $body
            }
            homkoszul_core::field::FieldKind::Prime(p) => {
                let $f = homkoszul_core::field::PrimeField::new(p)?;
                $body
            }
        }
    };
}

pub fn parse_field(text: &str) -> Result<FieldKind> {
    text.parse().map_err(|_| CliError::BadField(text.to_string()))
}

/// Parses and fully validates a document.
pub fn parse_presentation(text: &str) -> Result<PresentationDocument> {
    let doc: PresentationDocument = serde_json::from_str(text)
        .map_err(|e| CliError::Syntax { line: e.line(), column: e.column(), message: e.to_string() })?;
    let kind = doc.field_kind()?;
    with_field!(kind, |f| doc.presentation(f).map(|_| ()))?;
    Ok(doc)
}

impl PresentationDocument {
    pub fn field_kind(&self) -> Result<FieldKind> {
        parse_field(&self.field)
    }

    pub fn quiver(&self) -> Result<Quiver> {
        if self.version != FORMAT_VERSION {
            return Err(CliError::UnsupportedVersion(self.version));
        }
        let mut arrows: Vec<Arrow> = Vec::new();
        for (index, a) in self.arrows.iter().enumerate() {
            let bad = |message: &str| CliError::BadArrow { index: index + 1, name: a.name.clone(), message: message.into() };
            if a.name.is_empty() {
                return Err(bad("empty name"));
            }
            if !(1..=self.vertices).contains(&a.src) || !(1..=self.vertices).contains(&a.tgt) {
                return Err(bad(&format!("endpoint outside 1..={}", self.vertices)));
            }
            if arrows.iter().any(|b| b.name == a.name) {
                return Err(CliError::DuplicateArrow { index: index + 1, name: a.name.clone() });
            }
            arrows.push(Arrow { name: a.name.clone(), src: a.src - 1, tgt: a.tgt - 1 });
        }
        Ok(Quiver::new(self.vertices, arrows)?)
    }

    /// Builds the presentation over `field`, ignoring the document's own
    /// field tag.
    pub fn presentation<F: Field>(&self, field: F) -> Result<RelPresentation<F>> {
        let quiver = self.quiver()?;
        if self.s < 2 {
            return Err(homkoszul_core::Error::BadRelationDegree(self.s).into());
        }
        let mut rows = Vec::new();
        for (r, terms) in self.relations.iter().enumerate() {
            let mut row = Vec::new();
            let mut block = None;
            for (t, term) in terms.iter().enumerate() {
                let at = Location { relation: r, term: t };
                if term.path.len() != self.s {
                    return Err(CliError::BadDegree { at, len: term.path.len(), s: self.s });
                }
                let word = term
                    .path
                    .iter()
                    .map(|n| quiver.arrow_index(n).ok_or_else(|| CliError::UnknownArrow { at: at.clone(), name: n.clone() }))
                    .collect::<Result<Vec<_>>>()?;
                if let Some(k) = (1..word.len()).find(|&k| quiver.tgt(word[k - 1]) != quiver.src(word[k])) {
                    return Err(CliError::BadEndpoint {
                        at,
                        message: format!("`{}` does not end where `{}` starts", term.path[k - 1], term.path[k]),
                    });
                }
                let ends = (quiver.src(word[0]), quiver.tgt(word[word.len() - 1]));
                if *block.get_or_insert(ends) != ends {
                    return Err(CliError::BadEndpoint { at, message: "terms of one relation must share endpoints".into() });
                }
                let coef = field
                    .parse_elem(&term.coef)
                    .ok_or_else(|| CliError::BadCoefficient { at: at.clone(), literal: term.coef.clone() })?;
                row.push((coef, word));
            }
            rows.push(row);
        }
        Ok(RelPresentation::from_words(field, quiver, self.s, &rows)?)
    }

    /// The canonical document of a presentation: relations are the reduced
    /// echelon basis, terms in path order.
    pub fn from_presentation<F: Field>(p: &RelPresentation<F>) -> Self {
        let q = p.quiver();
        let field = p.field();
        let basis = q.path_basis(p.s());
        let name = |w: Vec<usize>| w.into_iter().map(|a| q.arrows()[a].name.clone()).collect();
        let relations = p
            .relations()
            .basis()
            .iter()
            .map(|row| row.iter().map(|(c, v)| Term { coef: field.format_elem(v), path: name(basis.word(*c)) }).collect())
            .collect();
        PresentationDocument {
            version: FORMAT_VERSION,
            field: field.kind().to_string(),
            vertices: q.vertex_count(),
            arrows: q.arrows().iter().map(|a| ArrowSpec { name: a.name.clone(), src: a.src + 1, tgt: a.tgt + 1 }).collect(),
            s: p.s(),
            relations,
        }
    }

    /// The document re-expressed canonically, optionally over another field.
    pub fn canonical(&self, field: Option<FieldKind>) -> Result<Self> {
        let kind = match field {
            Some(k) => k,
            None => self.field_kind()?,
        };
        with_field!(kind, |f| Ok(Self::from_presentation(&self.presentation(f)?)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}
