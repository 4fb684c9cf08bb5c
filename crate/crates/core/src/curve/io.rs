//! JSON formats for curves and combinatorial types.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::types::{CombinatorialType, TypeEdge, TypeLeg};
use super::{validate_curve, CurveError, ParametrizedTropicalCurve, Point, RawCurve};
use crate::lattice::Vec2;
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum CurveParseError {
    #[error("malformed json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational {0:?}")]
    Rational(String),
    #[error(transparent)]
    Invalid(#[from] CurveError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: usize,
    pub weight: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pos: Option<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub len: Option<String>,
    pub slope: Vec2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegRecord {
    pub id: usize,
    pub anchor: usize,
    pub slope: Vec2,
}

/// Shared layout of curve and type files; types omit `pos` and `len`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFile {
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
    pub legs: Vec<LegRecord>,
}

pub type TypeFile = CurveFile;

impl<S: Scalar> From<&ParametrizedTropicalCurve<S>> for CurveFile {
    fn from(c: &ParametrizedTropicalCurve<S>) -> Self {
        CurveFile {
            vertices: (0..c.vertex_count())
                .map(|v| VertexRecord {
                    id: v,
                    weight: c.weight(v),
                    pos: Some([c.position(v).x.to_fraction(), c.position(v).y.to_fraction()]),
                })
                .collect(),
            edges: (0..c.edge_count())
                .map(|e| EdgeRecord {
                    id: e,
                    tail: c.edge(e).tail,
                    head: c.edge(e).head,
                    len: Some(c.edge(e).length.to_fraction()),
                    slope: c.edge_slope(e),
                })
                .collect(),
            legs: (0..c.leg_count())
                .map(|l| LegRecord { id: l, anchor: c.leg_anchor(l), slope: c.leg_slope(l) })
                .collect(),
        }
    }
}

impl From<&CombinatorialType> for TypeFile {
    fn from(t: &CombinatorialType) -> Self {
        CurveFile {
            vertices: t
                .weights
                .iter()
                .enumerate()
                .map(|(id, &weight)| VertexRecord { id, weight, pos: None })
                .collect(),
            edges: t
                .edges
                .iter()
                .enumerate()
                .map(|(id, e)| EdgeRecord { id, tail: e.tail, head: e.head, len: None, slope: e.slope })
                .collect(),
            legs: t
                .legs
                .iter()
                .enumerate()
                .map(|(id, l)| LegRecord { id, anchor: l.anchor, slope: l.slope })
                .collect(),
        }
    }
}

fn parse<S: Scalar>(s: &str) -> Result<S, CurveParseError> {
    S::parse_fraction(s).ok_or_else(|| CurveParseError::Rational(s.to_string()))
}

impl CurveFile {
    pub fn to_curve<S: Scalar>(&self) -> Result<ParametrizedTropicalCurve<S>, CurveParseError> {
        let missing = || CurveParseError::Rational("missing".into());
        let mut raw = RawCurve { vertices: vec![], edges: vec![], legs: vec![] };
        for v in &self.vertices {
            let [x, y] = v.pos.as_ref().ok_or_else(missing)?;
            raw.vertices.push((v.id, v.weight, Point::new(parse(x)?, parse(y)?)));
        }
        for e in &self.edges {
            let len = parse(e.len.as_deref().ok_or_else(missing)?)?;
            raw.edges.push((e.id, e.tail, e.head, len, e.slope));
        }
        for l in &self.legs {
            raw.legs.push((l.id, l.anchor, l.slope));
        }
        Ok(validate_curve(raw)?)
    }

    pub fn to_type(&self) -> Result<CombinatorialType, CurveError> {
        let index: std::collections::HashMap<usize, usize> =
            self.vertices.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
        if index.len() != self.vertices.len() {
            return Err(CurveError::DuplicateId(0));
        }
        let look = |id| index.get(&id).copied().ok_or(CurveError::UnknownVertex(id));
        Ok(CombinatorialType {
            weights: self.vertices.iter().map(|v| v.weight).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Ok(TypeEdge { tail: look(e.tail)?, head: look(e.head)?, slope: e.slope }))
                .collect::<Result<_, CurveError>>()?,
            legs: self
                .legs
                .iter()
                .map(|l| Ok(TypeLeg { anchor: look(l.anchor)?, slope: l.slope }))
                .collect::<Result<_, CurveError>>()?,
        })
    }
}

pub fn curve_to_json<S: Scalar>(c: &ParametrizedTropicalCurve<S>) -> String {
    serde_json::to_string_pretty(&CurveFile::from(c)).expect("curve serializes")
}

pub fn curve_from_json<S: Scalar>(text: &str) -> Result<ParametrizedTropicalCurve<S>, CurveParseError> {
    let file: CurveFile = serde_json::from_str(text)?;
    file.to_curve()
}

pub fn type_to_json(t: &CombinatorialType) -> String {
    serde_json::to_string_pretty(&TypeFile::from(t)).expect("type serializes")
}

pub fn type_from_json(text: &str) -> Result<CombinatorialType, CurveParseError> {
    let file: TypeFile = serde_json::from_str(text)?;
    Ok(file.to_type()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, Rational};

    #[test]
    fn curve_roundtrip_is_bit_exact() {
        let c = ParametrizedTropicalCurve::<Rational>::new(
            vec![0, 0],
            vec![Point::new(frac(1, 2), frac(-3, 4)), Point::new(frac(3, 2), frac(-3, 4))],
            vec![(0, 1, Rational::from_i64(1), Vec2::new(1, 0))],
            vec![
                (0, Vec2::new(-1, 1)),
                (0, Vec2::new(0, -1)),
                (1, Vec2::new(1, 1)),
                (1, Vec2::new(0, -1)),
            ],
        )
        .unwrap();
        let text = curve_to_json(&c);
        assert!(text.contains("\"1/2\""));
        let back: ParametrizedTropicalCurve<Rational> = curve_from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(curve_to_json(&back), text);
    }

    #[test]
    fn unreduced_input_is_normalized() {
        let text = r#"{"vertices":[{"id":7,"weight":0,"pos":["2/4","0/3"]}],"edges":[],
            "legs":[{"id":0,"anchor":7,"slope":[-1,0]},{"id":1,"anchor":7,"slope":[0,-1]},{"id":2,"anchor":7,"slope":[1,1]}]}"#;
        let c: ParametrizedTropicalCurve<Rational> = curve_from_json(text).unwrap();
        assert!(curve_to_json(&c).contains("\"1/2\""));
        assert!(curve_from_json::<Rational>("{").is_err());
    }
}
