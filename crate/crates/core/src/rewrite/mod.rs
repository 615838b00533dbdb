// Copyright contributors to the zxcc project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Rewrite rules, matching and application.

mod library;
mod matching;
mod rule;
mod soundness;

pub use library::*;
pub(crate) use matching::apply_unchecked;
pub use matching::{
    apply, find_all_matches_with, find_matches, find_matches_with, HalfEdge, Match,
};
pub use rule::{RepetitionBox, RewriteRule, RuleJson, DEFAULT_BOX_MAX};
pub use soundness::{
    check_soundness, check_soundness_with, default_phase_samples, Counterexample, SoundnessReport,
};
