//! Every example runs to completion.

macro_rules! example {
    ($name:ident, $path:literal) => {
        #[path = $path]
        mod $name;

        #[test]
        fn $name() {
            $name::main();
        }
    };
}

example!(terms, "../examples/terms.rs");
example!(words, "../examples/words.rs");
example!(normal_forms, "../examples/normal_forms.rs");
example!(normalize, "../examples/normalize.rs");
example!(languages, "../examples/languages.rs");
example!(star_free, "../examples/star_free.rs");
example!(semigroups, "../examples/semigroups.rs");
example!(equality, "../examples/equality.rs");
example!(synchronize, "../examples/synchronize.rs");
