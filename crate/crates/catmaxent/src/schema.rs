//! Categorical schemas, tuples, patterns, and pattern constraints.
//!
//! Attributes and values are addressed by dense integer indices everywhere
//! outside the I/O layer; labels live in the [`Schema`] and are used only for
//! ingestion and display. All types here are immutable after construction and
//! safe to share across threads.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest/largest admissible constraint target when boundary clamping is enabled.
pub const BOUNDARY_EPS: f64 = 1e-9;

/// A single categorical attribute: a name plus its ordered value labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttributeDef {
    pub name: String,
    pub values: Vec<String>,
}

impl AttributeDef {
    pub fn new(name: impl Into<String>, values: impl IntoIterator<Item = impl Into<String>>) -> Self {
        AttributeDef {
            name: name.into(),
            values: values.into_iter().map(Into::into).collect(),
        }
    }
}

/// An ordered set of categorical attributes, each with a finite value range.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "Vec<AttributeDef>", into = "Vec<AttributeDef>")]
pub struct Schema {
    attributes: Vec<AttributeDef>,
    name_index: HashMap<String, usize>,
    value_index: Vec<HashMap<String, usize>>,
}

impl PartialEq for Schema {
    fn eq(&self, other: &Self) -> bool {
        self.attributes == other.attributes
    }
}
impl Eq for Schema {}

impl TryFrom<Vec<AttributeDef>> for Schema {
    type Error = Error;
    fn try_from(attrs: Vec<AttributeDef>) -> Result<Self> {
        Schema::new(attrs)
    }
}
impl From<Schema> for Vec<AttributeDef> {
    fn from(s: Schema) -> Self {
        s.attributes
    }
}

impl Schema {
    /// Validates name/label uniqueness and the minimum cardinality of 2 per attribute.
    pub fn new(attributes: Vec<AttributeDef>) -> Result<Self> {
        if attributes.is_empty() {
            return Err(Error::EmptyInput("schema has no attributes"));
        }
        let mut name_index = HashMap::new();
        let mut value_index = Vec::with_capacity(attributes.len());
        for (i, attr) in attributes.iter().enumerate() {
            if name_index.insert(attr.name.clone(), i).is_some() {
                return Err(Error::Validation(format!("duplicate attribute name `{}`", attr.name)));
            }
            if attr.values.len() < 2 {
                return Err(Error::Validation(format!(
                    "attribute `{}` has {} value(s); at least 2 required",
                    attr.name,
                    attr.values.len()
                )));
            }
            let mut vi = HashMap::new();
            for (j, v) in attr.values.iter().enumerate() {
                if vi.insert(v.clone(), j).is_some() {
                    return Err(Error::Validation(format!(
                        "duplicate value label `{}` in attribute `{}`",
                        v, attr.name
                    )));
                }
            }
            value_index.push(vi);
        }
        Ok(Schema { attributes, name_index, value_index })
    }

    pub fn attribute_count(&self) -> usize {
        self.attributes.len()
    }

    pub fn attributes(&self) -> &[AttributeDef] {
        &self.attributes
    }

    pub fn attribute(&self, i: usize) -> &AttributeDef {
        &self.attributes[i]
    }

    /// Number of values of attribute `i`.
    pub fn cardinality(&self, i: usize) -> usize {
        self.attributes[i].values.len()
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.name_index.get(name).copied()
    }

    pub fn value_index(&self, attr: usize, label: &str) -> Option<usize> {
        self.value_index.get(attr).and_then(|m| m.get(label)).copied()
    }

    pub fn value_label(&self, attr: usize, value: usize) -> &str {
        &self.attributes[attr].values[value]
    }

    /// Total tuple-space size, or `None` when the product overflows 128 bits.
    ///
    /// Only callers that need the exact count (block sizes, uniform tuple
    /// probabilities) reject the overflow case; probability-space computations
    /// never require it.
    pub fn tuple_space_size(&self) -> Option<u128> {
        let mut total: u128 = 1;
        for a in &self.attributes {
            total = total.checked_mul(a.values.len() as u128)?;
        }
        Some(total)
    }

    /// Like [`Schema::tuple_space_size`] but restricted to a subset of attributes.
    pub fn subspace_size(&self, attrs: impl IntoIterator<Item = usize>) -> Option<u128> {
        let mut total: u128 = 1;
        for i in attrs {
            total = total.checked_mul(self.cardinality(i) as u128)?;
        }
        Some(total)
    }

    pub fn validate_tuple(&self, t: &Tuple) -> Result<()> {
        if t.values().len() != self.attributes.len() {
            return Err(Error::SchemaMismatch(format!(
                "tuple has {} values, schema has {} attributes",
                t.values().len(),
                self.attributes.len()
            )));
        }
        for (i, &v) in t.values().iter().enumerate() {
            if v >= self.cardinality(i) {
                return Err(Error::SchemaMismatch(format!(
                    "value index {} out of range for attribute `{}` (cardinality {})",
                    v,
                    self.attributes[i].name,
                    self.cardinality(i)
                )));
            }
        }
        Ok(())
    }
}

/// A categorical tuple: one value index per schema attribute, position-aligned.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tuple(Vec<usize>);

impl Tuple {
    pub fn new(values: Vec<usize>) -> Self {
        Tuple(values)
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn value(&self, attr: usize) -> usize {
        self.0[attr]
    }
}

/// An assignment of values to a nonempty subset of attributes.
///
/// A tuple *contains* the pattern when it agrees with every assigned value;
/// [`Pattern::matches`] is that indicator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    assignments: BTreeMap<usize, usize>,
}

impl Pattern {
    /// Builds a pattern over `(attribute index, value index)` pairs, validated
    /// against the schema. Empty or repeated attribute sets are rejected.
    pub fn new(schema: &Schema, assignments: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (attr, value) in assignments {
            if attr >= schema.attribute_count() {
                return Err(Error::SchemaMismatch(format!(
                    "attribute index {} out of range (schema has {} attributes)",
                    attr,
                    schema.attribute_count()
                )));
            }
            if value >= schema.cardinality(attr) {
                return Err(Error::SchemaMismatch(format!(
                    "value index {} out of range for attribute `{}`",
                    value,
                    schema.attribute(attr).name
                )));
            }
            if map.insert(attr, value).is_some() {
                return Err(Error::Validation(format!(
                    "attribute `{}` assigned twice in pattern",
                    schema.attribute(attr).name
                )));
            }
        }
        if map.is_empty() {
            return Err(Error::EmptyInput("pattern has no assignments"));
        }
        Ok(Pattern { assignments: map })
    }

    /// Builds a pattern from `(attribute label, value label)` pairs.
    pub fn from_labels<'a>(
        schema: &Schema,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let mut indexed = Vec::new();
        for (name, label) in pairs {
            let attr = schema
                .attribute_index(name)
                .ok_or_else(|| Error::SchemaMismatch(format!("unknown attribute `{name}`")))?;
            let value = schema.value_index(attr, label).ok_or_else(|| {
                Error::SchemaMismatch(format!("unknown value `{label}` for attribute `{name}`"))
            })?;
            indexed.push((attr, value));
        }
        Pattern::new(schema, indexed)
    }

    /// Parses the `attr=value,attr=value` expression syntax.
    pub fn parse(schema: &Schema, expr: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for part in expr.split(',') {
            let part = part.trim();
            let (name, label) = part.split_once('=').ok_or_else(|| Error::Parse {
                location: format!("pattern expression `{expr}`"),
                message: format!("expected `attr=value`, got `{part}`"),
            })?;
            pairs.push((name.trim(), label.trim()));
        }
        Pattern::from_labels(schema, pairs)
    }

    pub fn assignments(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.assignments.iter().map(|(&a, &v)| (a, v))
    }

    pub fn attrs(&self) -> impl Iterator<Item = usize> + '_ {
        self.assignments.keys().copied()
    }

    pub fn value(&self, attr: usize) -> Option<usize> {
        self.assignments.get(&attr).copied()
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    /// Indicator: 1 iff every assigned attribute of the pattern equals the
    /// tuple's value at that attribute. Caller guarantees the tuple belongs to
    /// the same schema the pattern was validated against.
    pub fn matches(&self, t: &Tuple) -> bool {
        self.assignments.iter().all(|(&a, &v)| t.value(a) == v)
    }

    /// Renders as `attr=value,attr=value` using schema labels.
    pub fn display(&self, schema: &Schema) -> String {
        self.assignments
            .iter()
            .map(|(&a, &v)| format!("{}={}", schema.attribute(a).name, schema.value_label(a, v)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.assignments.iter().map(|(a, v)| format!("#{a}={v}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A pattern paired with the target probability the fitted distribution must match.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternConstraint {
    pub pattern: Pattern,
    pub target: f64,
}

impl PatternConstraint {
    /// Rejects targets outside the open interval (0,1): boundary frequencies
    /// force infinite or zero multiplicative parameters in the exponential form.
    pub fn new(pattern: Pattern, target: f64) -> Result<Self> {
        if !(target > 0.0 && target < 1.0) {
            return Err(Error::InvalidConstraint(format!(
                "target probability {target} for pattern {pattern} must lie strictly inside (0,1)"
            )));
        }
        Ok(PatternConstraint { pattern, target })
    }

    /// Clamps targets into `[BOUNDARY_EPS, 1 - BOUNDARY_EPS]` instead of
    /// rejecting the boundary. Still rejects values outside `[0,1]` or NaN.
    pub fn new_clamped(pattern: Pattern, target: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&target) {
            return Err(Error::InvalidConstraint(format!(
                "target probability {target} for pattern {pattern} must lie in [0,1]"
            )));
        }
        let clamped = target.clamp(BOUNDARY_EPS, 1.0 - BOUNDARY_EPS);
        Ok(PatternConstraint { pattern, target: clamped })
    }
}

/// Rejects duplicate patterns in a constraint set. The constraint set defines
/// an intersection of equality constraints, so a repeated pattern is either
/// redundant or contradictory; both are hard errors.
pub fn validate_constraint_set(schema: &Schema, constraints: &[PatternConstraint]) -> Result<()> {
    let mut seen: HashSet<&Pattern> = HashSet::new();
    for c in constraints {
        for (attr, value) in c.pattern.assignments() {
            if attr >= schema.attribute_count() || value >= schema.cardinality(attr) {
                return Err(Error::SchemaMismatch(format!(
                    "constraint pattern {} does not fit the schema",
                    c.pattern
                )));
            }
        }
        if !seen.insert(&c.pattern) {
            return Err(Error::DuplicateConstraint(format!(
                "pattern {} appears more than once",
                c.pattern.display(schema)
            )));
        }
    }
    Ok(())
}

/// A multiset of categorical tuples valid under a shared schema.
#[derive(Debug, Clone, PartialEq)]
pub struct TupleDataset {
    schema: Schema,
    rows: Vec<Tuple>,
}

impl TupleDataset {
    pub fn new(schema: Schema, rows: Vec<Tuple>) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            schema.validate_tuple(row).map_err(|e| {
                Error::SchemaMismatch(format!("row {i}: {e}"))
            })?;
        }
        Ok(TupleDataset { schema, rows })
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn rows(&self) -> &[Tuple] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Empirical probability of the pattern: matching rows over `|D|`.
    pub fn pattern_frequency(&self, pattern: &Pattern) -> Result<f64> {
        if self.rows.is_empty() {
            return Err(Error::EmptyInput("dataset has no rows"));
        }
        let hits = self.rows.iter().filter(|t| pattern.matches(t)).count();
        Ok(hits as f64 / self.rows.len() as f64)
    }

    /// Per-attribute empirical value frequencies; each row sums to 1.
    pub fn value_frequencies(&self) -> Result<Vec<Vec<f64>>> {
        if self.rows.is_empty() {
            return Err(Error::EmptyInput("dataset has no rows"));
        }
        let n = self.rows.len() as f64;
        let mut freqs: Vec<Vec<f64>> = (0..self.schema.attribute_count())
            .map(|i| vec![0.0; self.schema.cardinality(i)])
            .collect();
        for row in &self.rows {
            for (i, &v) in row.values().iter().enumerate() {
                freqs[i][v] += 1.0;
            }
        }
        for row in &mut freqs {
            for x in row.iter_mut() {
                *x /= n;
            }
        }
        Ok(freqs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc_schema() -> Schema {
        Schema::new(vec![
            AttributeDef::new("a1", ["a", "b"]),
            AttributeDef::new("a2", ["x", "b"]),
            AttributeDef::new("a3", ["c", "d"]),
        ])
        .unwrap()
    }

    #[test]
    fn indicator_direct_match() {
        let s = abc_schema();
        let p = Pattern::new(&s, [(0, 0)]).unwrap();
        assert!(p.matches(&Tuple::new(vec![0, 1, 0])));
    }

    #[test]
    fn indicator_mismatch() {
        let s = abc_schema();
        // a2 = "x" (index 0), tuple carries index 1 there
        let p = Pattern::new(&s, [(0, 0), (1, 0)]).unwrap();
        assert!(!p.matches(&Tuple::new(vec![0, 1, 0])));
    }

    #[test]
    fn empty_pattern_rejected_at_construction() {
        let s = abc_schema();
        let err = Pattern::new(&s, []).unwrap_err();
        assert!(matches!(err, Error::EmptyInput(_)));
    }

    #[test]
    fn out_of_range_pattern_is_schema_mismatch() {
        let s = abc_schema();
        assert!(matches!(Pattern::new(&s, [(7, 0)]), Err(Error::SchemaMismatch(_))));
        assert!(matches!(Pattern::new(&s, [(0, 9)]), Err(Error::SchemaMismatch(_))));
    }

    #[test]
    fn indicator_is_product_of_per_attribute_equalities() {
        // Exhaustive over a 3-attribute binary space and all 1- and 2-attribute patterns.
        let s = abc_schema();
        let mut tuples = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    tuples.push(Tuple::new(vec![x, y, z]));
                }
            }
        }
        let mut patterns = Vec::new();
        for a in 0..3 {
            for v in 0..2 {
                patterns.push(Pattern::new(&s, [(a, v)]).unwrap());
                for b in (a + 1)..3 {
                    for w in 0..2 {
                        patterns.push(Pattern::new(&s, [(a, v), (b, w)]).unwrap());
                    }
                }
            }
        }
        for p in &patterns {
            for t in &tuples {
                let product: bool = p.assignments().all(|(a, v)| t.value(a) == v);
                assert_eq!(p.matches(t), product);
            }
        }
    }

    #[test]
    fn empirical_frequency_counts() {
        let s = abc_schema();
        let rows = vec![
            Tuple::new(vec![0, 0, 0]),
            Tuple::new(vec![0, 1, 0]),
            Tuple::new(vec![0, 0, 1]),
            Tuple::new(vec![1, 0, 0]),
        ];
        let d = TupleDataset::new(s.clone(), rows).unwrap();
        let p = Pattern::new(&s, [(0, 0)]).unwrap();
        assert_eq!(d.pattern_frequency(&p).unwrap(), 0.75);
        let never = Pattern::new(&s, [(0, 1), (1, 1)]).unwrap();
        assert_eq!(d.pattern_frequency(&never).unwrap(), 0.0);
    }

    #[test]
    fn empirical_frequency_full_tuple_pattern() {
        let s = abc_schema();
        let mut rows = vec![Tuple::new(vec![1, 1, 1])];
        for _ in 0..9 {
            rows.push(Tuple::new(vec![0, 0, 0]));
        }
        let d = TupleDataset::new(s.clone(), rows).unwrap();
        let p = Pattern::new(&s, [(0, 1), (1, 1), (2, 1)]).unwrap();
        assert!((d.pattern_frequency(&p).unwrap() - 0.1).abs() < 1e-15);
    }

    #[test]
    fn empirical_frequency_rejects_empty_dataset() {
        let s = abc_schema();
        let d = TupleDataset::new(s.clone(), vec![]).unwrap();
        let p = Pattern::new(&s, [(0, 0)]).unwrap();
        assert!(matches!(d.pattern_frequency(&p), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn empirical_frequency_invariant_under_row_permutation() {
        let s = abc_schema();
        let rows = vec![
            Tuple::new(vec![0, 0, 0]),
            Tuple::new(vec![1, 1, 1]),
            Tuple::new(vec![0, 1, 0]),
            Tuple::new(vec![1, 0, 1]),
            Tuple::new(vec![0, 0, 1]),
        ];
        let mut rev = rows.clone();
        rev.reverse();
        let d1 = TupleDataset::new(s.clone(), rows).unwrap();
        let d2 = TupleDataset::new(s.clone(), rev).unwrap();
        for a in 0..3 {
            for v in 0..2 {
                let p = Pattern::new(&s, [(a, v)]).unwrap();
                assert_eq!(d1.pattern_frequency(&p).unwrap(), d2.pattern_frequency(&p).unwrap());
            }
        }
    }

    #[test]
    fn boundary_targets_rejected_unless_clamped() {
        let s = abc_schema();
        let p = Pattern::new(&s, [(0, 0)]).unwrap();
        assert!(PatternConstraint::new(p.clone(), 0.0).is_err());
        assert!(PatternConstraint::new(p.clone(), 1.0).is_err());
        assert!(PatternConstraint::new(p.clone(), f64::NAN).is_err());
        let c = PatternConstraint::new_clamped(p.clone(), 1.0).unwrap();
        assert!((c.target - (1.0 - BOUNDARY_EPS)).abs() < 1e-15);
        assert!(PatternConstraint::new_clamped(p, 1.5).is_err());
    }

    #[test]
    fn duplicate_patterns_are_hard_errors() {
        let s = abc_schema();
        let p = Pattern::new(&s, [(0, 0)]).unwrap();
        let c1 = PatternConstraint::new(p.clone(), 0.3).unwrap();
        let c2 = PatternConstraint::new(p, 0.4).unwrap();
        let err = validate_constraint_set(&s, &[c1, c2]).unwrap_err();
        assert!(matches!(err, Error::DuplicateConstraint(_)));
    }

    #[test]
    fn schema_rejects_degenerate_inputs() {
        assert!(Schema::new(vec![]).is_err());
        assert!(Schema::new(vec![AttributeDef::new("a", ["only"])]).is_err());
        assert!(Schema::new(vec![
            AttributeDef::new("a", ["x", "y"]),
            AttributeDef::new("a", ["u", "v"]),
        ])
        .is_err());
        assert!(Schema::new(vec![AttributeDef::new("a", ["x", "x"])]).is_err());
    }

    #[test]
    fn tuple_space_size_overflow_is_detected() {
        let small = abc_schema();
        assert_eq!(small.tuple_space_size(), Some(8));
        // 100 attributes with 4 values each overflow u128
        let attrs: Vec<AttributeDef> = (0..100)
            .map(|i| AttributeDef::new(format!("a{i}"), ["0", "1", "2", "3"]))
            .collect();
        let big = Schema::new(attrs).unwrap();
        assert_eq!(big.tuple_space_size(), None);
        // 70 binary attributes exceed u64 but fit u128
        let attrs: Vec<AttributeDef> =
            (0..70).map(|i| AttributeDef::new(format!("b{i}"), ["0", "1"])).collect();
        let wide = Schema::new(attrs).unwrap();
        assert_eq!(wide.tuple_space_size(), Some(1u128 << 70));
    }

    #[test]
    fn pattern_expression_parsing() {
        let s = abc_schema();
        let p = Pattern::parse(&s, "a1=a, a3=d").unwrap();
        assert_eq!(p.value(0), Some(0));
        assert_eq!(p.value(2), Some(1));
        assert!(Pattern::parse(&s, "a1").is_err());
        assert!(Pattern::parse(&s, "nope=a").is_err());
    }
}
