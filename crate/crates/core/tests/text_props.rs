use proptest::prelude::*;
use sbs_core::corpus::{corpus_stats, Document, EmotionLexicons, Lexicon};
use sbs_core::textprep::{preprocess, stem_word, tokenize, Language, PrepConfig};

const WORDS: &[&str] = &[
    "gatto", "gatti", "corre", "il", "la", "di", "piacere", "prezzo", "Città", "perché", "è",
    "ecco", "bellissimo", "l'acquisto", "e-mail", "2021",
];

fn text() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(WORDS), 0..25).prop_map(|w| w.join(" "))
}

fn stoplist() -> impl Strategy<Value = Vec<&'static str>> {
    prop::collection::vec(prop::sample::select(&["il", "la", "di", "è", "gatto", "ecco"][..]), 0..4)
}

fn prep(stop: &[&str]) -> PrepConfig {
    PrepConfig::new(Language::Italian, Lexicon::new("stop", stop.iter().copied()).unwrap())
}

fn is_subsequence(short: &[String], long: &[String]) -> bool {
    let mut it = long.iter();
    short.iter().all(|s| it.any(|l| l == s))
}

proptest! {
    #[test]
    fn stems_align_with_raw_tokens(t in text(), stop in stoplist()) {
        let cfg = prep(&stop);
        let p = preprocess(&Document::new("d", t.as_str()), &cfg);
        prop_assert_eq!(&p.raw_tokens, &tokenize(&t, false));
        prop_assert_eq!(p.stems.len(), p.stem_of.len());
        prop_assert!(p.stem_of.windows(2).all(|w| w[0] < w[1]));
        for (stem, &pos) in p.stems.iter().zip(&p.stem_of) {
            let token = &p.raw_tokens[pos];
            prop_assert!(!cfg.stopwords.contains(token));
            prop_assert_eq!(stem, &stem_word(token, Language::Italian));
        }
        let kept = p.raw_tokens.iter().filter(|t| !cfg.stopwords.contains(t)).count();
        prop_assert_eq!(kept, p.stems.len());
    }

    #[test]
    fn more_stopwords_remove_more(t in text(), a in stoplist(), b in stoplist()) {
        let both: Vec<&str> = a.iter().chain(&b).copied().collect();
        let doc = Document::new("d", t.as_str());
        let few = preprocess(&doc, &prep(&a)).stems;
        let many = preprocess(&doc, &prep(&both)).stems;
        prop_assert!(is_subsequence(&many, &few));
    }

    #[test]
    fn self_concatenation_doubles_tokens(t in text()) {
        let once = Document::new("d", t.as_str());
        let twice = Document::new("d", format!("{t} {t}"));
        prop_assume!(!tokenize(&t, false).is_empty());
        let s1 = corpus_stats(&[once], None, false).unwrap();
        let s2 = corpus_stats(&[twice], None, false).unwrap();
        prop_assert_eq!(s2.tokens_mean, 2.0 * s1.tokens_mean);
        prop_assert_eq!(s2.types_mean, s1.types_mean);
        prop_assert!((s2.ttr_mean - s1.ttr_mean / 2.0).abs() < 1e-12);
        prop_assert!(s1.types_mean <= s1.tokens_mean);
        prop_assert!(s1.ttr_mean > 0.0 && s1.ttr_mean <= 1.0);
    }

    #[test]
    fn lexicon_counts_match_token_scan(texts in prop::collection::vec(text(), 1..5)) {
        let docs: Vec<Document> = texts.iter().enumerate()
            .map(|(i, t)| Document::new(format!("d{i}"), t.as_str()))
            .collect();
        prop_assume!(docs.iter().any(|d| !tokenize(&d.text, false).is_empty()));
        let pos = ["piacere", "bellissimo", "città"];
        let neg = ["prezzo", "perché"];
        let lex = EmotionLexicons {
            positive: Lexicon::new("pos", pos).unwrap(),
            negative: Lexicon::new("neg", neg).unwrap(),
        };
        let stats = corpus_stats(&docs, Some(&lex), false).unwrap();
        let count = |list: &[&str]| -> u64 {
            let mut n = 0;
            for d in &texts {
                for w in d.to_lowercase().split(|c: char| !c.is_alphabetic()) {
                    n += u64::from(list.contains(&w));
                }
            }
            n
        };
        prop_assert_eq!(stats.positive_count, Some(count(&pos)));
        prop_assert_eq!(stats.negative_count, Some(count(&neg)));
    }
}
