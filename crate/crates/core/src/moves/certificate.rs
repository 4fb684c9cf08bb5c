use serde::{Deserialize, Serialize};

use crate::curve::{
    combinatorial_type, types_isomorphic_unordered, CombinatorialType, CurveFile, CurveParseError, TypeFile,
};
use crate::Curve;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// One transition of the rewriting engine. Indices refer to the left-to-right
/// elevator order before the move; `floor` is the lower of the two floors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Move {
    SwapElevators { index: usize },
    ElevatorUp { index: usize },
    ElevatorDown { index: usize },
    ElevatorUpInverse { index: usize },
    ElevatorDownInverse { index: usize },
    MergeCrossingLegs { floor: usize, side: Side },
    SplitCrossingLegs { floor: usize, side: Side },
}

impl Move {
    pub fn inverse(self) -> Move {
        use Move::*;
        match self {
            SwapElevators { index } => SwapElevators { index },
            ElevatorUp { index } => ElevatorUpInverse { index },
            ElevatorDown { index } => ElevatorDownInverse { index },
            ElevatorUpInverse { index } => ElevatorUp { index },
            ElevatorDownInverse { index } => ElevatorDown { index },
            MergeCrossingLegs { floor, side } => SplitCrossingLegs { floor, side },
            SplitCrossingLegs { floor, side } => MergeCrossingLegs { floor, side },
        }
    }

    /// The same move seen after `y ↦ −y` on a curve with `h` floors.
    pub fn mirror_y(self, h: usize) -> Move {
        use Move::*;
        match self {
            SwapElevators { index } => SwapElevators { index },
            ElevatorUp { index } => ElevatorDown { index },
            ElevatorDown { index } => ElevatorUp { index },
            ElevatorUpInverse { index } => ElevatorDownInverse { index },
            ElevatorDownInverse { index } => ElevatorUpInverse { index },
            MergeCrossingLegs { floor, side } => MergeCrossingLegs { floor: h - floor, side },
            SplitCrossingLegs { floor, side } => SplitCrossingLegs { floor: h - floor, side },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Nice,
    Wall,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub kind: StepKind,
    pub ty: CombinatorialType,
    pub witness: Curve,
    /// The move that led here from the previous step.
    pub mv: Option<Move>,
}

/// Alternating chain nice, wall, nice, …, nice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveCertificate {
    pub steps: Vec<Step>,
}

impl MoveCertificate {
    /// The trivial certificate of a single stratum.
    pub fn single(witness: Curve) -> Self {
        MoveCertificate {
            steps: vec![Step { kind: StepKind::Nice, ty: combinatorial_type(&witness), witness, mv: None }],
        }
    }

    pub fn wall_count(&self) -> usize {
        self.steps.iter().filter(|s| s.kind == StepKind::Wall).count()
    }

    /// No wall is crossed.
    pub fn is_empty(&self) -> bool {
        self.wall_count() == 0
    }

    pub fn first(&self) -> &Step {
        &self.steps[0]
    }

    pub fn last(&self) -> &Step {
        self.steps.last().expect("certificate has a step")
    }

    pub fn moves(&self) -> Vec<Move> {
        self.steps.iter().filter_map(|s| s.mv).collect()
    }

    /// Appends `other`, whose first step must be the same stratum as our last.
    pub fn extend(&mut self, other: MoveCertificate) {
        debug_assert!(types_isomorphic_unordered(&self.last().ty, &other.first().ty));
        // the joint stratum keeps the outer witness: ours at the start, theirs after
        if self.steps.len() > 1 {
            let last = self.steps.pop().expect("nonempty");
            let mut rest = other.steps.into_iter();
            let joint = rest.next().expect("nonempty");
            self.steps.push(Step { mv: last.mv, ..joint });
            self.steps.extend(rest);
        } else {
            self.steps.extend(other.steps.into_iter().skip(1));
        }
    }

    pub fn reversed(&self) -> MoveCertificate {
        let n = self.steps.len();
        let steps = (0..n)
            .map(|j| {
                let k = n - 1 - j;
                let mv = (k + 1 < n).then(|| self.steps[k + 1].mv.map(Move::inverse)).flatten();
                Step { mv, ..self.steps[k].clone() }
            })
            .collect();
        MoveCertificate { steps }
    }

    pub fn mirror_y(&self, h: usize) -> MoveCertificate {
        MoveCertificate {
            steps: self
                .steps
                .iter()
                .map(|s| Step {
                    kind: s.kind,
                    ty: s.ty.mirror_y(),
                    witness: s.witness.mirror_y(),
                    mv: s.mv.map(|m| m.mirror_y(h)),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let file = CertificateFile {
            steps: self
                .steps
                .iter()
                .map(|s| StepRecord {
                    kind: s.kind,
                    ty: TypeFile::from(&s.ty),
                    witness: CurveFile::from(&s.witness),
                    mv: s.mv,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<MoveCertificate, CurveParseError> {
        let file: CertificateFile = serde_json::from_str(text)?;
        Ok(MoveCertificate {
            steps: file
                .steps
                .into_iter()
                .map(|r| {
                    Ok(Step {
                        kind: r.kind,
                        ty: r.ty.to_type()?,
                        witness: r.witness.to_curve()?,
                        mv: r.mv,
                    })
                })
                .collect::<Result<_, CurveParseError>>()?,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct CertificateFile {
    steps: Vec<StepRecord>,
}

#[derive(Serialize, Deserialize)]
struct StepRecord {
    kind: StepKind,
    #[serde(rename = "type")]
    ty: TypeFile,
    witness: CurveFile,
    #[serde(rename = "move")]
    mv: Option<Move>,
}
