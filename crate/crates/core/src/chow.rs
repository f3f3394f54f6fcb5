//! Finite graded rational Chow-ring models.
//!
//! A [`ChowModel`] is a commutative graded algebra over the rationals given
//! by an explicit basis in each degree and a structure-constant table, with a
//! single basis element `"1"` in degree zero and all products of total degree
//! above the top degree truncated to zero. Elements are graded coordinate
//! vectors over one model; linear maps between models come in two kinds,
//! degree-preserving ring pullbacks and degree-shifting additive
//! pushforwards.
//!
//! Models are validated eagerly when built through [`ChowModel::load`]:
//! the unit law, commutativity and associativity are checked exhaustively on
//! basis tuples and an invalid table is rejected rather than used.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::LoadError;
use crate::linalg;
use crate::rational::{format_rat, Rat};

/// Raw model data before validation. Products may be given sparsely:
/// a missing `(b, a)` entry is mirrored from `(a, b)`, missing products
/// with `"1"` default to the unit law, and anything else missing is zero.
#[derive(Clone, Debug)]
pub struct ModelData {
    pub name: String,
    pub dimension: usize,
    /// Basis labels per degree `0..=dimension`; degree 0 must be `["1"]`.
    pub basis: Vec<Vec<String>>,
    /// Sparse product entries `(a, b, result as label -> coefficient)`.
    pub products: Vec<(String, String, BTreeMap<String, Rat>)>,
    /// Named degree-one classes usable as divisor components.
    pub divisors: Vec<(String, BTreeMap<String, Rat>)>,
}

/// A validated graded ring model. Immutable; share via `Arc`.
pub struct ChowModel {
    name: String,
    dimension: usize,
    basis: Vec<Vec<String>>,
    label_index: BTreeMap<String, (usize, usize)>,
    /// `table[g1][g2]` = coordinates of the product in degree
    /// `deg(g1)+deg(g2)`; empty vector means zero or truncated.
    table: Vec<Vec<Vec<Rat>>>,
    globals: Vec<(usize, usize)>,
    divisors: BTreeMap<String, Vec<Rat>>,
}

impl fmt::Debug for ChowModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChowModel")
            .field("name", &self.name)
            .field("dimension", &self.dimension)
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Axiom {
    Unit,
    Commutativity,
    Associativity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::Unit => write!(f, "unit"),
            Axiom::Commutativity => write!(f, "commutativity"),
            Axiom::Associativity => write!(f, "associativity"),
        }
    }
}

/// Outcome of the exhaustive table check.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub model: String,
    pub violation: Option<AxiomViolation>,
}

#[derive(Clone, Debug)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// Basis labels witnessing the failure: one label for the unit law,
    /// two for commutativity, three for associativity.
    pub labels: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "model {}: pass", self.model),
            Some(v) => write!(
                f,
                "model {}: {} fails at ({}): {} != {}",
                self.model,
                v.axiom,
                v.labels.join(", "),
                v.lhs,
                v.rhs
            ),
        }
    }
}

impl ChowModel {
    /// Build and validate; invalid tables are rejected.
    pub fn load(data: ModelData) -> Result<Arc<ChowModel>, LoadError> {
        let model = Self::assemble(data)?;
        let report = model.validate();
        match report.violation {
            None => Ok(Arc::new(model)),
            Some(v) => Err(LoadError::Validation {
                model: model.name.clone(),
                message: format!(
                    "{} fails at ({}): {} != {}",
                    v.axiom,
                    v.labels.join(", "),
                    v.lhs,
                    v.rhs
                ),
            }),
        }
    }

    /// Build without running the axiom check. The shape of the data is still
    /// enforced. Used by [`ChowModel::load`] and by tests that exercise
    /// [`ChowModel::validate`] on deliberately corrupted tables.
    pub fn assemble(data: ModelData) -> Result<ChowModel, LoadError> {
        let err = |message: String| LoadError::Model {
            model: data.name.clone(),
            message,
        };
        if data.basis.len() != data.dimension + 1 {
            return Err(err(format!(
                "expected {} basis degrees, found {}",
                data.dimension + 1,
                data.basis.len()
            )));
        }
        if data.basis[0] != vec!["1".to_string()] {
            return Err(err("degree-0 basis must be exactly [\"1\"]".into()));
        }
        let mut label_index = BTreeMap::new();
        let mut globals = Vec::new();
        for (deg, labels) in data.basis.iter().enumerate() {
            for (idx, label) in labels.iter().enumerate() {
                if label_index
                    .insert(label.clone(), (deg, idx))
                    .is_some()
                {
                    return Err(err(format!("duplicate basis label {label:?}")));
                }
                globals.push((deg, idx));
            }
        }

        let coords_of = |map: &BTreeMap<String, Rat>,
                         want_deg: usize|
         -> Result<Vec<Rat>, String> {
            let mut v = vec![Rat::zero(); data.basis[want_deg].len()];
            for (label, c) in map {
                let Some(&(deg, idx)) = label_index.get(label) else {
                    return Err(format!("unknown basis label {label:?}"));
                };
                if deg != want_deg {
                    return Err(format!(
                        "label {label:?} has degree {deg}, expected {want_deg}"
                    ));
                }
                v[idx] = c.clone();
            }
            Ok(v)
        };

        let n = globals.len();
        let mut given: BTreeMap<(usize, usize), Vec<Rat>> = BTreeMap::new();
        for (a, b, result) in &data.products {
            let Some(&pa) = label_index.get(a) else {
                return Err(err(format!("unknown basis label {a:?} in product")));
            };
            let Some(&pb) = label_index.get(b) else {
                return Err(err(format!("unknown basis label {b:?} in product")));
            };
            let ga = globals.iter().position(|&g| g == pa).unwrap();
            let gb = globals.iter().position(|&g| g == pb).unwrap();
            let total = pa.0 + pb.0;
            if total > data.dimension {
                return Err(err(format!(
                    "product {a}*{b} has degree {total} above the top degree"
                )));
            }
            let coords = coords_of(result, total).map_err(|m| err(m))?;
            if given.insert((ga, gb), coords).is_some() {
                return Err(err(format!("duplicate product entry for {a}*{b}")));
            }
        }

        let mut table = vec![vec![Vec::new(); n]; n];
        for g1 in 0..n {
            for g2 in 0..n {
                let (d1, i1) = globals[g1];
                let (d2, i2) = globals[g2];
                if d1 + d2 > data.dimension {
                    continue; // truncated
                }
                let entry = if let Some(v) = given.get(&(g1, g2)) {
                    v.clone()
                } else if let Some(v) = given.get(&(g2, g1)) {
                    v.clone()
                } else if d1 == 0 {
                    let mut v = vec![Rat::zero(); data.basis[d2].len()];
                    v[i2] = Rat::one();
                    v
                } else if d2 == 0 {
                    let mut v = vec![Rat::zero(); data.basis[d1].len()];
                    v[i1] = Rat::one();
                    v
                } else {
                    vec![Rat::zero(); data.basis[d1 + d2].len()]
                };
                table[g1][g2] = entry;
            }
        }

        let mut divisors = BTreeMap::new();
        for (dname, class) in &data.divisors {
            let coords = coords_of(class, 1).map_err(|m| err(m))?;
            if divisors.insert(dname.clone(), coords).is_some() {
                return Err(err(format!("duplicate divisor name {dname:?}")));
            }
        }

        Ok(ChowModel {
            name: data.name,
            dimension: data.dimension,
            basis: data.basis,
            label_index,
            table,
            globals,
            divisors,
        })
    }

    /// Exhaustive axiom check over basis tuples: the unit law first, then
    /// commutativity on all pairs, then associativity on all triples.
    /// Reports the first violation found, identified by basis labels.
    pub fn validate(&self) -> ValidationReport {
        let n = self.globals.len();
        let basis_elt = |g: usize| {
            let (deg, idx) = self.globals[g];
            ChowElementRef::basis(self, deg, idx)
        };
        for g in 0..n {
            let x = basis_elt(g);
            let lhs = self.mul_raw(&ChowElementRef::basis(self, 0, 0), &x);
            if lhs != x.coords {
                return self.violation(Axiom::Unit, vec![self.label(g)], &lhs, &x.coords);
            }
            let rhs = self.mul_raw(&x, &ChowElementRef::basis(self, 0, 0));
            if rhs != x.coords {
                return self.violation(Axiom::Unit, vec![self.label(g)], &rhs, &x.coords);
            }
        }
        for g1 in 0..n {
            for g2 in 0..n {
                let lhs = self.mul_raw(&basis_elt(g1), &basis_elt(g2));
                let rhs = self.mul_raw(&basis_elt(g2), &basis_elt(g1));
                if lhs != rhs {
                    return self.violation(
                        Axiom::Commutativity,
                        vec![self.label(g1), self.label(g2)],
                        &lhs,
                        &rhs,
                    );
                }
            }
        }
        for g1 in 0..n {
            for g2 in 0..n {
                let p12 = self.mul_raw(&basis_elt(g1), &basis_elt(g2));
                for g3 in 0..n {
                    let lhs = self.mul_raw(&ChowElementRef { model: self, coords: p12.clone() }, &basis_elt(g3));
                    let p23 = self.mul_raw(&basis_elt(g2), &basis_elt(g3));
                    let rhs = self.mul_raw(&basis_elt(g1), &ChowElementRef { model: self, coords: p23 });
                    if lhs != rhs {
                        return self.violation(
                            Axiom::Associativity,
                            vec![self.label(g1), self.label(g2), self.label(g3)],
                            &lhs,
                            &rhs,
                        );
                    }
                }
            }
        }
        ValidationReport {
            model: self.name.clone(),
            violation: None,
        }
    }

    fn violation(
        &self,
        axiom: Axiom,
        labels: Vec<String>,
        lhs: &[Vec<Rat>],
        rhs: &[Vec<Rat>],
    ) -> ValidationReport {
        ValidationReport {
            model: self.name.clone(),
            violation: Some(AxiomViolation {
                axiom,
                labels,
                lhs: self.render_coords(lhs),
                rhs: self.render_coords(rhs),
            }),
        }
    }

    fn label(&self, g: usize) -> String {
        let (deg, idx) = self.globals[g];
        self.basis[deg][idx].clone()
    }

    fn mul_raw(&self, x: &ChowElementRef<'_>, y: &ChowElementRef<'_>) -> Vec<Vec<Rat>> {
        let mut out: Vec<Vec<Rat>> = self
            .basis
            .iter()
            .map(|labels| vec![Rat::zero(); labels.len()])
            .collect();
        for (g1, &(d1, i1)) in self.globals.iter().enumerate() {
            let c1 = &x.coords[d1][i1];
            if c1.is_zero() {
                continue;
            }
            for (g2, &(d2, i2)) in self.globals.iter().enumerate() {
                if d1 + d2 > self.dimension {
                    continue;
                }
                let c2 = &y.coords[d2][i2];
                if c2.is_zero() {
                    continue;
                }
                let f = c1 * c2;
                for (k, t) in self.table[g1][g2].iter().enumerate() {
                    if !t.is_zero() {
                        out[d1 + d2][k] += &f * t;
                    }
                }
            }
        }
        out
    }

    fn render_coords(&self, coords: &[Vec<Rat>]) -> String {
        let mut parts = Vec::new();
        for (deg, labels) in self.basis.iter().enumerate() {
            for (idx, label) in labels.iter().enumerate() {
                let c = &coords[deg][idx];
                if !c.is_zero() {
                    parts.push(format!("{}*{}", format_rat(c), label));
                }
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn basis(&self) -> &[Vec<String>] {
        &self.basis
    }

    pub fn basis_size(&self, degree: usize) -> usize {
        self.basis[degree].len()
    }

    pub fn label_degree(&self, label: &str) -> Option<(usize, usize)> {
        self.label_index.get(label).copied()
    }

    pub fn divisor_names(&self) -> impl Iterator<Item = &str> {
        self.divisors.keys().map(String::as_str)
    }

    pub fn has_divisor(&self, name: &str) -> bool {
        self.divisors.contains_key(name)
    }
}

struct ChowElementRef<'a> {
    model: &'a ChowModel,
    coords: Vec<Vec<Rat>>,
}

impl<'a> ChowElementRef<'a> {
    fn basis(model: &'a ChowModel, deg: usize, idx: usize) -> Self {
        let mut coords: Vec<Vec<Rat>> = model
            .basis
            .iter()
            .map(|labels| vec![Rat::zero(); labels.len()])
            .collect();
        coords[deg][idx] = Rat::one();
        ChowElementRef { model, coords }
    }
}

/// A graded coordinate vector over one model.
#[derive(Clone)]
pub struct ChowElement {
    model: Arc<ChowModel>,
    coords: Vec<Vec<Rat>>,
}

impl fmt::Debug for ChowElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.model.name(), self.render())
    }
}

impl PartialEq for ChowElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.model, &other.model) && self.coords == other.coords
    }
}

impl Eq for ChowElement {}

fn assert_same_model(a: &ChowElement, b: &ChowElement) {
    assert!(
        Arc::ptr_eq(&a.model, &b.model),
        "elements of distinct models {} and {} may not be mixed",
        a.model.name(),
        b.model.name()
    );
}

impl ChowElement {
    pub fn zero(model: &Arc<ChowModel>) -> Self {
        let coords = model
            .basis
            .iter()
            .map(|labels| vec![Rat::zero(); labels.len()])
            .collect();
        ChowElement {
            model: Arc::clone(model),
            coords,
        }
    }

    pub fn one(model: &Arc<ChowModel>) -> Self {
        Self::basis(model, 0, 0)
    }

    pub fn basis(model: &Arc<ChowModel>, degree: usize, idx: usize) -> Self {
        let mut e = Self::zero(model);
        e.coords[degree][idx] = Rat::one();
        e
    }

    pub fn constant(model: &Arc<ChowModel>, c: Rat) -> Self {
        let mut e = Self::zero(model);
        e.coords[0][0] = c;
        e
    }

    pub fn from_label(model: &Arc<ChowModel>, label: &str) -> Option<Self> {
        let (deg, idx) = model.label_degree(label)?;
        Some(Self::basis(model, deg, idx))
    }

    /// The class registered under a divisor name.
    pub fn divisor_class(model: &Arc<ChowModel>, name: &str) -> Option<Self> {
        let coords1 = model.divisors.get(name)?.clone();
        let mut e = Self::zero(model);
        e.coords[1] = coords1;
        Some(e)
    }

    pub fn from_coords(model: &Arc<ChowModel>, coords: Vec<Vec<Rat>>) -> Self {
        assert_eq!(coords.len(), model.dimension + 1);
        for (deg, v) in coords.iter().enumerate() {
            assert_eq!(v.len(), model.basis_size(deg));
        }
        ChowElement {
            model: Arc::clone(model),
            coords,
        }
    }

    pub fn model(&self) -> &Arc<ChowModel> {
        &self.model
    }

    pub fn coords(&self) -> &[Vec<Rat>] {
        &self.coords
    }

    pub fn coefficient(&self, label: &str) -> Option<&Rat> {
        let (deg, idx) = self.model.label_degree(label)?;
        Some(&self.coords[deg][idx])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().flatten().all(Rat::is_zero)
    }

    /// True iff all positive-degree parts vanish.
    pub fn is_degree_zero(&self) -> bool {
        self.coords[1..].iter().flatten().all(Rat::is_zero)
    }

    /// The coefficient of the unit basis element.
    pub fn constant_part(&self) -> Rat {
        self.coords[0][0].clone()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let coords = self
            .coords
            .iter()
            .map(|v| v.iter().map(|x| x * c).collect())
            .collect();
        ChowElement {
            model: Arc::clone(&self.model),
            coords,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_same_model(self, other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        ChowElement {
            model: Arc::clone(&self.model),
            coords,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    /// Product via the structure-constant table; total degrees above the
    /// top degree truncate to zero. Panics if the models differ.
    pub fn mul(&self, other: &Self) -> Self {
        assert_same_model(self, other);
        let coords = self.model.mul_raw(
            &ChowElementRef {
                model: &self.model,
                coords: self.coords.clone(),
            },
            &ChowElementRef {
                model: &self.model,
                coords: other.coords.clone(),
            },
        );
        ChowElement {
            model: Arc::clone(&self.model),
            coords,
        }
    }

    /// Truncated exponential `sum_k x^k / k!`. Panics unless the degree-zero
    /// part of `x` is zero (the series would not terminate otherwise).
    pub fn exp(&self) -> Self {
        assert!(
            self.coords[0][0].is_zero(),
            "exp requires a vanishing degree-0 part"
        );
        let mut acc = ChowElement::one(&self.model);
        let mut term = ChowElement::one(&self.model);
        let mut factorial = Rat::one();
        for k in 1..=self.model.dimension {
            term = term.mul(self);
            factorial *= Rat::from_integer(k.into());
            acc = acc.add(&term.scale(&factorial.recip()));
        }
        acc
    }

    /// The degree-`k` component as an element. Panics when `k` exceeds the
    /// model dimension.
    pub fn graded_part(&self, k: usize) -> Self {
        assert!(
            k <= self.model.dimension,
            "degree {k} out of range for model {}",
            self.model.name()
        );
        let mut e = ChowElement::zero(&self.model);
        e.coords[k] = self.coords[k].clone();
        e
    }

    /// Serialization-friendly view: label -> coefficient, zeros skipped.
    pub fn to_label_map(&self) -> BTreeMap<String, Rat> {
        let mut out = BTreeMap::new();
        for (deg, labels) in self.model.basis.iter().enumerate() {
            for (idx, label) in labels.iter().enumerate() {
                let c = &self.coords[deg][idx];
                if !c.is_zero() {
                    out.insert(label.clone(), c.clone());
                }
            }
        }
        out
    }

    pub fn render(&self) -> String {
        self.model.render_coords(&self.coords)
    }
}

/// True iff `x` lies, degree by degree, in the linear span of
/// `{class(D) * b : D in components, b basis}`. The degree-zero part of `x`
/// must vanish. Components are divisor-registry names of `x`'s model;
/// unknown names are simply absent from the span.
pub fn ideal_membership(x: &ChowElement, components: &[String]) -> bool {
    let model = x.model();
    if !x.constant_part().is_zero() {
        return false;
    }
    let classes: Vec<ChowElement> = components
        .iter()
        .filter_map(|name| ChowElement::divisor_class(model, name))
        .collect();
    for deg in 1..=model.dimension() {
        let target = &x.coords()[deg];
        if target.iter().all(Rat::is_zero) {
            continue;
        }
        let mut generators: Vec<Vec<Rat>> = Vec::new();
        for class in &classes {
            for idx in 0..model.basis_size(deg - 1) {
                let b = ChowElement::basis(model, deg - 1, idx);
                let prod = class.mul(&b);
                generators.push(prod.coords()[deg].clone());
            }
        }
        if !linalg::in_span(&generators, target) {
            return false;
        }
    }
    true
}

/// Which kind of linear map a [`ModelMap`] is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapKind {
    /// Degree-preserving ring homomorphism (a pullback). Multiplicativity
    /// and preservation of the unit are validated when the map is built.
    RingPullback,
    /// Additive map shifting degree down by `shift` (a pushforward of
    /// relative dimension `shift`).
    Pushforward { shift: usize },
}

/// A linear map between two models, stored as per-degree images of the
/// source basis.
pub struct ModelMap {
    name: String,
    source: Arc<ChowModel>,
    target: Arc<ChowModel>,
    kind: MapKind,
    /// `images[deg][idx]` = coordinate vector in the single target degree
    /// (`deg` for pullbacks, `deg - shift` for pushforwards; empty when the
    /// target degree does not exist).
    images: Vec<Vec<Vec<Rat>>>,
}

impl fmt::Debug for ModelMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModelMap")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .finish()
    }
}

impl ModelMap {
    /// Build a map from per-label images and validate it. For ring pullbacks
    /// the unit must map to the unit and `f(xy) = f(x) f(y)` must hold on all
    /// basis pairs of the source.
    pub fn load(
        name: &str,
        source: &Arc<ChowModel>,
        target: &Arc<ChowModel>,
        kind: MapKind,
        images_by_label: &BTreeMap<String, BTreeMap<String, Rat>>,
    ) -> Result<Arc<ModelMap>, LoadError> {
        let err = |message: String| LoadError::Map {
            map: name.to_string(),
            message,
        };
        let shift = match kind {
            MapKind::RingPullback => 0,
            MapKind::Pushforward { shift } => shift,
        };
        let mut images: Vec<Vec<Vec<Rat>>> = Vec::new();
        for deg in 0..=source.dimension() {
            let mut per_degree = Vec::new();
            for _ in 0..source.basis_size(deg) {
                let v = if deg >= shift && deg - shift <= target.dimension() {
                    vec![Rat::zero(); target.basis_size(deg - shift)]
                } else {
                    Vec::new()
                };
                per_degree.push(v);
            }
            images.push(per_degree);
        }
        for (label, image) in images_by_label {
            let Some((deg, idx)) = source.label_degree(label) else {
                return Err(err(format!("unknown source label {label:?}")));
            };
            if deg < shift || deg - shift > target.dimension() {
                if image.values().any(|c| !c.is_zero()) {
                    return Err(err(format!(
                        "label {label:?} must map to zero under degree shift"
                    )));
                }
                continue;
            }
            let want_deg = deg - shift;
            for (tlabel, c) in image {
                let Some((tdeg, tidx)) = target.label_degree(tlabel) else {
                    return Err(err(format!("unknown target label {tlabel:?}")));
                };
                if tdeg != want_deg {
                    return Err(err(format!(
                        "image of {label:?} must live in degree {want_deg}, {tlabel:?} has degree {tdeg}"
                    )));
                }
                images[deg][idx][tidx] = c.clone();
            }
        }
        let map = ModelMap {
            name: name.to_string(),
            source: Arc::clone(source),
            target: Arc::clone(target),
            kind: kind.clone(),
            images,
        };
        if kind == MapKind::RingPullback {
            let unit_image = map.apply(&ChowElement::one(source));
            if unit_image != ChowElement::one(target) {
                return Err(err("ring map does not preserve the unit".into()));
            }
            for d1 in 0..=source.dimension() {
                for i1 in 0..source.basis_size(d1) {
                    let x = ChowElement::basis(source, d1, i1);
                    let fx = map.apply(&x);
                    for d2 in 0..=source.dimension() {
                        for i2 in 0..source.basis_size(d2) {
                            let y = ChowElement::basis(source, d2, i2);
                            let lhs = map.apply(&x.mul(&y));
                            let rhs = fx.mul(&map.apply(&y));
                            if lhs != rhs {
                                return Err(err(format!(
                                    "not multiplicative on ({}, {}): {} != {}",
                                    source.basis[d1][i1],
                                    source.basis[d2][i2],
                                    lhs.render(),
                                    rhs.render()
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(Arc::new(map))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn source(&self) -> &Arc<ChowModel> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChowModel> {
        &self.target
    }

    /// Linear extension of the stored basis images. Panics when `x` does not
    /// live in the source model.
    pub fn apply(&self, x: &ChowElement) -> ChowElement {
        assert!(
            Arc::ptr_eq(x.model(), &self.source),
            "map {} applied to an element of {}",
            self.name,
            x.model().name()
        );
        let shift = match self.kind {
            MapKind::RingPullback => 0,
            MapKind::Pushforward { shift } => shift,
        };
        let mut out = ChowElement::zero(&self.target);
        for (deg, per_degree) in self.images.iter().enumerate() {
            if deg < shift || deg - shift > self.target.dimension() {
                continue;
            }
            let tdeg = deg - shift;
            for (idx, image) in per_degree.iter().enumerate() {
                let c = &x.coords()[deg][idx];
                if c.is_zero() {
                    continue;
                }
                for (tidx, v) in image.iter().enumerate() {
                    if !v.is_zero() {
                        out.coords[tdeg][tidx] += c * v;
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn entry(a: &str, b: &str, result: &[(&str, Rat)]) -> (String, String, BTreeMap<String, Rat>) {
        (
            a.into(),
            b.into(),
            result
                .iter()
                .map(|(l, c)| (l.to_string(), c.clone()))
                .collect(),
        )
    }

    fn p1_data() -> ModelData {
        ModelData {
            name: "p1".into(),
            dimension: 1,
            basis: vec![vec!["1".into()], vec!["pt".into()]],
            products: vec![],
            divisors: vec![("pt".into(), [("pt".into(), rat_int(1))].into())],
        }
    }

    fn quot_cubic() -> ModelData {
        // Q[h]/(h^3)
        ModelData {
            name: "p2".into(),
            dimension: 2,
            basis: vec![vec!["1".into()], vec!["h".into()], vec!["h2".into()]],
            products: vec![entry("h", "h", &[("h2", rat_int(1))])],
            divisors: vec![("h".into(), [("h".into(), rat_int(1))].into())],
        }
    }

    fn two_squares() -> ModelData {
        // Q[s,h]/(s^2, h^2)
        ModelData {
            name: "p1xp1".into(),
            dimension: 2,
            basis: vec![
                vec!["1".into()],
                vec!["s".into(), "h".into()],
                vec!["sh".into()],
            ],
            products: vec![entry("s", "h", &[("sh", rat_int(1))])],
            divisors: vec![
                ("s".into(), [("s".into(), rat_int(1))].into()),
                ("h".into(), [("h".into(), rat_int(1))].into()),
            ],
        }
    }

    #[test]
    fn polynomial_quotient_ring_validates() {
        assert!(ChowModel::load(quot_cubic()).is_ok());
        assert!(ChowModel::load(two_squares()).is_ok());
        assert!(ChowModel::load(p1_data()).is_ok());
    }

    #[test]
    fn corrupted_unit_row_fails_with_witness() {
        // 1 * h2 = 2 h2 breaks the unit law.
        let mut data = quot_cubic();
        data.products.push(entry("1", "h2", &[("h2", rat_int(2))]));
        let model = ChowModel::assemble(data).unwrap();
        let report = model.validate();
        let v = report.violation.expect("corrupted table must fail");
        assert_eq!(v.axiom, Axiom::Unit);
        assert_eq!(v.labels, vec!["h2".to_string()]);
        assert!(ChowModel::load({
            let mut d = quot_cubic();
            d.products.push(entry("1", "h2", &[("h2", rat_int(2))]));
            d
        })
        .is_err());
    }

    #[test]
    fn inconsistent_triple_fails_associativity() {
        // In Q[s,h]/(s^2,h^3)-flavoured data: corrupt s*h2 while keeping the
        // rest consistent; (s,h,h) then tells the two routes apart.
        let data = ModelData {
            name: "bad".into(),
            dimension: 3,
            basis: vec![
                vec!["1".into()],
                vec!["s".into(), "h".into()],
                vec!["sh".into(), "h2".into()],
                vec!["sh2".into()],
            ],
            products: vec![
                entry("s", "h", &[("sh", rat_int(1))]),
                entry("h", "h", &[("h2", rat_int(1))]),
                entry("h", "sh", &[("sh2", rat_int(1))]),
                entry("h", "h2", &[]),
                entry("s", "h2", &[("sh2", rat_int(2))]), // corrupted
                entry("s", "sh", &[]),
            ],
            divisors: vec![],
        };
        let model = ChowModel::assemble(data).unwrap();
        let report = model.validate();
        let v = report.violation.expect("must fail");
        assert_eq!(v.axiom, Axiom::Associativity);
        assert_eq!(
            v.labels,
            vec!["s".to_string(), "h".to_string(), "h".to_string()]
        );
    }

    #[test]
    fn asymmetric_table_fails_commutativity() {
        let mut data = quot_cubic();
        data.products.push(entry("h", "h2", &[]));
        data.products.push(entry("h2", "h", &[("1", rat_int(0))]));
        // both fine so far; now a genuinely asymmetric degree-2 pair
        data.products.push(entry("1", "h", &[("h", rat_int(1))]));
        let model = ChowModel::assemble({
            let mut d = data;
            d.products
                .push(entry("h", "1", &[("h", rat_int(2))]));
            d
        })
        .unwrap();
        let report = model.validate();
        let v = report.violation.expect("must fail");
        assert_eq!(v.axiom, Axiom::Commutativity);
    }

    #[test]
    fn multiplication_examples() {
        let p2 = ChowModel::load(quot_cubic()).unwrap();
        let one = ChowElement::one(&p2);
        let h = ChowElement::from_label(&p2, "h").unwrap();
        let h2 = ChowElement::from_label(&p2, "h2").unwrap();
        // (1+h)(1+h) = 1 + 2h + h^2
        let x = one.add(&h);
        let sq = x.mul(&x);
        assert_eq!(sq, one.add(&h.scale(&rat_int(2))).add(&h2));
        // truncation: h^2 * h = 0
        assert!(h2.mul(&h).is_zero());

        let pp = ChowModel::load(two_squares()).unwrap();
        let s = ChowElement::from_label(&pp, "s").unwrap();
        let hh = ChowElement::from_label(&pp, "h").unwrap();
        let sh = ChowElement::from_label(&pp, "sh").unwrap();
        assert_eq!(s.mul(&hh), sh);
        assert!(s.mul(&s).is_zero());
    }

    #[test]
    fn exp_examples() {
        let p2 = ChowModel::load(quot_cubic()).unwrap();
        let zero = ChowElement::zero(&p2);
        assert_eq!(zero.exp(), ChowElement::one(&p2));
        // exp(2h) = 1 + 2h + 2h^2
        let h = ChowElement::from_label(&p2, "h").unwrap();
        let e = h.scale(&rat_int(2)).exp();
        let expected = ChowElement::one(&p2)
            .add(&h.scale(&rat_int(2)))
            .add(&ChowElement::from_label(&p2, "h2").unwrap().scale(&rat_int(2)));
        assert_eq!(e, expected);

        // exp(s+h) = 1 + s + h + sh
        let pp = ChowModel::load(two_squares()).unwrap();
        let s = ChowElement::from_label(&pp, "s").unwrap();
        let hh = ChowElement::from_label(&pp, "h").unwrap();
        let sh = ChowElement::from_label(&pp, "sh").unwrap();
        assert_eq!(
            s.add(&hh).exp(),
            ChowElement::one(&pp).add(&s).add(&hh).add(&sh)
        );
    }

    #[test]
    #[should_panic(expected = "vanishing degree-0")]
    fn exp_rejects_constant_term() {
        let p1 = ChowModel::load(p1_data()).unwrap();
        ChowElement::one(&p1).exp();
    }

    #[test]
    fn graded_part_is_projection() {
        let p2 = ChowModel::load(quot_cubic()).unwrap();
        let h = ChowElement::from_label(&p2, "h").unwrap();
        let x = ChowElement::one(&p2)
            .add(&h.scale(&rat_int(2)))
            .add(&ChowElement::from_label(&p2, "h2").unwrap());
        assert_eq!(x.graded_part(1), h.scale(&rat_int(2)));
        let mut sum = ChowElement::zero(&p2);
        for k in 0..=2 {
            assert_eq!(x.graded_part(k).graded_part(k), x.graded_part(k));
            sum = sum.add(&x.graded_part(k));
        }
        assert_eq!(sum, x);
        // constant term of exp of any divisor is 1
        assert_eq!(h.scale(&rat(7, 3)).exp().graded_part(0), ChowElement::one(&p2));
    }

    #[test]
    fn membership_examples() {
        let p1 = ChowModel::load(p1_data()).unwrap();
        let pt = ChowElement::from_label(&p1, "pt").unwrap();
        assert!(ideal_membership(&pt.scale(&rat(1, 2)), &["pt".into()]));
        let with_unit = ChowElement::one(&p1).add(&pt.scale(&rat(1, 2)));
        assert!(!ideal_membership(&with_unit, &["pt".into()]));

        let pp = ChowModel::load(two_squares()).unwrap();
        let sh = ChowElement::from_label(&pp, "sh").unwrap();
        assert!(ideal_membership(&sh, &["h".into()]));
        let s = ChowElement::from_label(&pp, "s").unwrap();
        assert!(!ideal_membership(&s, &["h".into()]));
    }

    #[test]
    fn maps_apply_and_validate() {
        let p1 = ChowModel::load(p1_data()).unwrap();
        // double cover: pt -> 2 pt
        let double = ModelMap::load(
            "double-cover",
            &p1,
            &p1,
            MapKind::RingPullback,
            &[("pt".to_string(), [("pt".to_string(), rat_int(2))].into())].into(),
        )
        .unwrap();
        let pt = ChowElement::from_label(&p1, "pt").unwrap();
        assert_eq!(double.apply(&pt), pt.scale(&rat_int(2)));

        // identity
        let id = ModelMap::load(
            "id",
            &p1,
            &p1,
            MapKind::RingPullback,
            &[("pt".to_string(), [("pt".to_string(), rat_int(1))].into())].into(),
        )
        .unwrap();
        let x = ChowElement::one(&p1).add(&pt.scale(&rat(3, 7)));
        assert_eq!(id.apply(&x), x);

        // fiber integration table on Q[s,h]/(s^2,h^2)
        let pp = ChowModel::load(two_squares()).unwrap();
        let push = ModelMap::load(
            "projection",
            &pp,
            &p1,
            MapKind::Pushforward { shift: 1 },
            &[
                ("h".to_string(), [("1".to_string(), rat_int(1))].into()),
                ("sh".to_string(), [("pt".to_string(), rat_int(1))].into()),
            ]
            .into(),
        )
        .unwrap();
        let h = ChowElement::from_label(&pp, "h").unwrap();
        let sh = ChowElement::from_label(&pp, "sh").unwrap();
        let x = h.scale(&rat_int(3)).add(&sh.scale(&rat_int(5)));
        let want = ChowElement::constant(&p1, rat_int(3)).add(&pt.scale(&rat_int(5)));
        assert_eq!(push.apply(&x), want);

        // a non-multiplicative "pullback" is rejected: pt -> h on P2 squares
        // to h2 while pt^2 = 0.
        let p2 = ChowModel::load(quot_cubic()).unwrap();
        let bad = ModelMap::load(
            "bad",
            &p1,
            &p2,
            MapKind::RingPullback,
            &[("pt".to_string(), [("h".to_string(), rat_int(1))].into())].into(),
        );
        assert!(bad.is_err());
    }
}
