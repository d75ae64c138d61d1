//! Semantic-module coding: I and J from the citation context, K and L from
//! the citing document.

mod lexicon;
mod venue;

use crate::codebook::{Coding, Disposition, Domain, Focus, Function, Location, Slot};
use crate::extract::CitationContext;
use crate::ingest::{Document, DocumentMetadata};

pub use lexicon::{
    load_lexicon, parse_lexicon, tokenize, CueEntry, CueLexicon, CueTag, LexiconSet, MatchedCue,
    DEFAULT_EVIDENCE, DEFAULT_FOCUS, DEFAULT_FRAMEWORK, DEFAULT_NEGATIVE, DEFAULT_POSITIVE,
};
pub use venue::{VenueMapping, DEFAULT_VENUES};

fn matches(tokens: &[String], lexicons: &[&CueLexicon]) -> Vec<MatchedCue> {
    let mut out: Vec<MatchedCue> = Vec::new();
    for m in lexicons.iter().flat_map(|l| l.find(tokens)) {
        if !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

/// Category J: negative only, positive only, both, or neither.
pub fn code_disposition(
    context: &CitationContext,
    lex: &LexiconSet,
) -> (Coding<Disposition>, Vec<MatchedCue>) {
    let tokens = tokenize(&context.text);
    let cues: Vec<MatchedCue> = matches(&tokens, &[&lex.negative, &lex.positive])
        .into_iter()
        .filter(|m| m.tag.is_disposition())
        .collect();
    let neg = cues.iter().any(|m| m.tag == CueTag::Negative);
    let pos = cues.iter().any(|m| m.tag == CueTag::Positive);
    let coding = match (neg, pos) {
        (true, false) => Coding::value(Disposition::Negative, "J:negative-cue"),
        (false, true) => Coding::value(Disposition::Positive, "J:positive-cue"),
        (true, true) => Coding::value(Disposition::Mixed, "J:mixed-cues"),
        (false, false) => Coding::value(Disposition::Neutral, "J:no-cue"),
    };
    (coding, cues)
}

/// Section prior used when no function cue fires.
pub fn section_prior(location: Location) -> Function {
    match location {
        Location::Abstract | Location::Introduction | Location::LiteratureReview => {
            Function::Background
        }
        Location::Methodology => Function::Framework,
        Location::ResultsDiscussion => Function::Evidence,
        Location::Conclusion => Function::Challenges,
        Location::Other => Function::Background,
    }
}

/// Category I: challenge cues, then evidence, then framework, then
/// background cues, then the section prior.
pub fn code_function(
    context: &CitationContext,
    location: Location,
    lex: &LexiconSet,
) -> (Coding<Function>, Vec<MatchedCue>) {
    let tokens = tokenize(&context.text);
    let cues: Vec<MatchedCue> = matches(&tokens, &[&lex.negative, &lex.evidence, &lex.framework])
        .into_iter()
        .filter(|m| {
            matches!(
                m.tag,
                CueTag::Negative | CueTag::Evidence | CueTag::Framework | CueTag::Background
            )
        })
        .collect();
    let has = |t: CueTag| cues.iter().any(|m| m.tag == t);
    let coding = if has(CueTag::Negative) {
        Coding::value(Function::Challenges, "I:challenge-cue")
    } else if has(CueTag::Evidence) {
        Coding::value(Function::Evidence, "I:evidence-cue")
    } else if has(CueTag::Framework) {
        Coding::value(Function::Framework, "I:framework-cue")
    } else if has(CueTag::Background) {
        Coding::value(Function::Background, "I:background-cue")
    } else {
        Coding::value(section_prior(location), "I:section-prior")
    };
    (coding, cues)
}

/// Category K: explicit override, then venue mapping.
pub fn code_domain(meta: &DocumentMetadata, mapping: &VenueMapping) -> Coding<Domain> {
    if let Some(d) = meta.domain_override {
        return Coding::value(d, "K:override");
    }
    match mapping.lookup(&meta.venue_name) {
        Some(d) => Coding::value(d, "K:venue-mapping"),
        None => Coding::uncodable("unmapped-venue", "K:unmapped"),
    }
}

/// Focus cues over every sentence of the document.
pub fn focus_cues(doc: &Document, lex: &LexiconSet) -> Vec<MatchedCue> {
    let tokens: Vec<String> = doc.sentences.iter().flat_map(|s| tokenize(s)).collect();
    lex.focus
        .find(&tokens)
        .into_iter()
        .filter(|m| {
            matches!(
                m.tag,
                CueTag::Experimental | CueTag::Empirical | CueTag::Theoretical
            )
        })
        .collect()
}

/// Category L: experimental, empirical, then theoretical cues; otherwise
/// the domain prior.
pub fn code_focus(domain: &Slot<Domain>, cues: &[MatchedCue]) -> Coding<Focus> {
    let has = |t: CueTag| cues.iter().any(|m| m.tag == t);
    if has(CueTag::Experimental) {
        return Coding::value(Focus::Experimental, "L:experimental-cue");
    }
    if has(CueTag::Empirical) {
        return Coding::value(Focus::Empirical, "L:empirical-cue");
    }
    if has(CueTag::Theoretical) {
        return Coding::value(Focus::Theoretical, "L:theoretical-cue");
    }
    match domain.value() {
        Some(Domain::Humanities) => Coding::value(Focus::Theoretical, "L:domain-prior"),
        Some(Domain::Social) => Coding::value(Focus::Empirical, "L:domain-prior"),
        Some(Domain::Natural | Domain::Applied) => {
            Coding::value(Focus::Experimental, "L:domain-prior")
        }
        None => Coding::value(Focus::Other, "L:no-evidence"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::ContextLevel;

    fn ctx(text: &str) -> CitationContext {
        CitationContext {
            citation_id: 1,
            level: ContextLevel::SingleSentence,
            sentence_indices: vec![0],
            text: text.to_string(),
        }
    }

    fn i_of(text: &str, loc: Location) -> Function {
        code_function(&ctx(text), loc, &LexiconSet::defaults())
            .0
            .get()
            .unwrap()
    }

    fn j_of(text: &str) -> Disposition {
        code_disposition(&ctx(text), &LexiconSet::defaults())
            .0
            .get()
            .unwrap()
    }

    #[test]
    fn function_cues() {
        assert_eq!(
            i_of("Substantial empirical work has shown that prediction markets produce remarkably accurate forecasts (Berg et al., 2001).", Location::Introduction),
            Function::Evidence
        );
        assert_eq!(
            i_of("Our solution concept is the Perfect Bayesian Equilibrium (PBE) (Fudenberg and Tirole 1991).", Location::Methodology),
            Function::Framework
        );
        assert_eq!(
            i_of("Our model is not unique in suffering from a multiplicity of equilibria (Spence, 1973).", Location::ResultsDiscussion),
            Function::Challenges
        );
        assert_eq!(
            i_of("Plain statement (Smith, 2011).", Location::Conclusion),
            Function::Challenges
        );
        assert_eq!(
            i_of("Plain statement (Smith, 2011).", Location::Other),
            Function::Background
        );
    }

    #[test]
    fn disposition_cues() {
        assert_eq!(
            j_of("This is a common problem with other Web technologies (Bennett, 1995)."),
            Disposition::Negative
        );
        assert_eq!(
            j_of("A seminal study (Smith, 2011)."),
            Disposition::Positive
        );
        assert_eq!(
            j_of("A seminal study, but limited (Smith, 2011)."),
            Disposition::Mixed
        );
        assert_eq!(
            j_of("Butter prices rose (Smith, 2011)."),
            Disposition::Neutral
        );
        let (_, cues) = code_disposition(
            &ctx("However, this holds, but not always."),
            &LexiconSet::defaults(),
        );
        let phrases: Vec<&str> = cues.iter().map(|c| c.phrase.as_str()).collect();
        assert_eq!(phrases, vec!["however", "but"]);
    }

    #[test]
    fn empty_lexicons_reduce_to_priors() {
        let empty = LexiconSet::empty();
        for &loc in Location::ALL {
            let (i, cues) = code_function(
                &ctx("However, it has been shown, based on evidence."),
                loc,
                &empty,
            );
            assert_eq!(i.get(), Some(section_prior(loc)));
            assert!(cues.is_empty());
        }
        let (j, _) = code_disposition(&ctx("However, seminal."), &empty);
        assert_eq!(j.get(), Some(Disposition::Neutral));
    }

    #[test]
    fn domain_rules() {
        let m = VenueMapping::defaults();
        let mut meta = DocumentMetadata {
            venue_name: "Cell".into(),
            ..Default::default()
        };
        assert_eq!(code_domain(&meta, &m).get(), Some(Domain::Natural));
        meta.domain_override = Some(Domain::Applied);
        assert_eq!(code_domain(&meta, &m).get(), Some(Domain::Applied));
        meta.domain_override = None;
        meta.venue_name = "Unknown Letters".into();
        assert_eq!(code_domain(&meta, &m).slot.reason(), Some("unmapped-venue"));
    }

    #[test]
    fn focus_rules() {
        let cue = |tag| MatchedCue {
            phrase: "x".into(),
            tag,
        };
        let social = Slot::Value(Domain::Social);
        assert_eq!(
            code_focus(&social, &[cue(CueTag::Theoretical)]).get(),
            Some(Focus::Theoretical)
        );
        assert_eq!(
            code_focus(
                &social,
                &[cue(CueTag::Theoretical), cue(CueTag::Experimental)]
            )
            .get(),
            Some(Focus::Experimental)
        );
        assert_eq!(code_focus(&social, &[]).get(), Some(Focus::Empirical));
        assert_eq!(
            code_focus(&Slot::Value(Domain::Humanities), &[]).get(),
            Some(Focus::Theoretical)
        );
        assert_eq!(
            code_focus(&Slot::Value(Domain::Applied), &[]).get(),
            Some(Focus::Experimental)
        );
        assert_eq!(
            code_focus(&Slot::uncodable("unmapped-venue"), &[]).get(),
            Some(Focus::Other)
        );
    }
}
