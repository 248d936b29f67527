// Walks one sentence through sampling, serialization, generation and scoring.

#include <iostream>

#include "kwpos.hpp"

int main() {
  using namespace kwpos;

  const auto target = tokenize_words("Marcia was looking forward to trying hang gliding.");
  const WordList no_frequent(WordListKind::Frequent, std::initializer_list<std::string_view>{});
  const auto candidates = extract_keyword_candidates(target, default_stopwords(), no_frequent);
  std::cout << target.size() << " tokens, " << candidates.size() << " keyword candidates\n";

  Rng rng(derive_seed(42, "marcia", 1, "train"));
  const auto spec = sample_control_spec(target, candidates, rng);
  const auto control = serialize_control(spec);
  std::cout << "control:   " << control << '\n';

  // A fixed spec for the rest, so the output does not depend on the draw.
  const auto fixed = parse_control("[LENGTH20] [SEP] hang gliding [POSITION70] [SEP] Marcia [POSITION0]");
  const auto text = generate_satisfying(fixed, 7);
  std::cout << "generated: " << text << '\n';

  const auto tokens = tokenize_words(text);
  for (const auto& outcome : keyword_position_outcomes(tokens, fixed))
    std::cout << "  " << to_string(outcome.kind) << " at " << outcome.actual->percent() << "%\n";

  const auto shifted = perturb(text, fixed, ShiftBucket{0, 10}, 7);
  std::cout << "shifted:   " << to_string(keyword_position_outcomes(tokenize_words(shifted.text), fixed)[0].kind)
            << '\n';
}
