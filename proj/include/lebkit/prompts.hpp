#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lebkit/corpus.hpp"

namespace lebkit {

enum class ConditionKind { Default, Flipped, Random };

struct Condition {
  ConditionKind kind = ConditionKind::Default;
  std::string attribute;  // Random only: the sampled attribute
  int slot = 0;           // Random only: 1..3

  // "Default", "Flipped", "Random", "Random2", "Random3"
  std::string key() const;
  bool operator==(const Condition&) const = default;
};

std::string_view to_string(ConditionKind k);
ConditionKind parse_condition_kind(std::string_view s);
// Inverse of Condition::key() (attribute left empty).
Condition parse_condition_key(std::string_view key);

enum class Task { Generation, ClosedCategory, ClosedCategoryNegated, ClosedAttribute };

std::string_view to_string(Task t);
Task parse_task(std::string_view s);
bool is_closed(Task t);

const std::vector<std::string>& political_personas();
const std::vector<std::string>& age_personas();
// The eleven personas, political first.
const std::vector<std::string>& all_personas();
bool is_persona(std::string_view label);

struct Speaker {
  std::string persona;  // empty for the AI assistant

  static Speaker assistant() { return {}; }
  // Throws Error for labels outside the eleven personas.
  static Speaker from_persona(std::string_view label);
  // "AIAssistant" or a persona label.
  static Speaker parse(std::string_view label);

  bool is_assistant() const { return persona.empty(); }
  std::string label() const;
  // "AIAssistant", "PoliticalPersonas" or "AgePersonas"
  std::string group() const;
  bool operator==(const Speaker&) const = default;
};

struct ProbeSpec {
  StereoItem item;
  Condition condition;
  Speaker speaker;
  Task task = Task::Generation;
  int prompt_version = 0;  // 1..4 for closed tasks, 0 for generation

  // Attribute that goes into the prompt (the sampled one under Random).
  const std::string& prompt_attribute() const;
  bool operator==(const ProbeSpec&) const = default;
};

struct Prompt {
  std::string system;
  std::string user;
  bool operator==(const Prompt&) const = default;
};

struct PromptOptions {
  // "You are a anarchist." is reproduced as-is unless this is set.
  bool fix_article = false;
};

Prompt build_generation_prompt(const ProbeSpec& spec,
                               const PromptOptions& opt = {});
Prompt build_closed_prompt(const ProbeSpec& spec);
Prompt build_prompt(const ProbeSpec& spec, const PromptOptions& opt = {});

// Verb phrase for "I ...": the attribute itself when it starts with a verb or
// auxiliary ("hold grudges", "can't drive"), else "am " + attribute.
std::string attribute_clause(std::string_view attribute);
// Negates a clause produced by attribute_clause.
std::string negate_clause(std::string_view clause);
std::string negate_attribute(std::string_view attribute);

// Fill-in sentence for a closed task, with the <BLANK> tag.
std::string closed_sentence(const ProbeSpec& spec);
// Expected fill for a closed task.
std::string closed_gold(const ProbeSpec& spec);

}  // namespace lebkit
