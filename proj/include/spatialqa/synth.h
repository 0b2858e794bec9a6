// Copyright 2026 The spatialqa Authors.
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

// Synthetic ophthalmology-style notes with exact gold annotations.
//
// Generation is plan-then-render. The planner turns per-type frequency
// targets into spatial frames (trigger + figures + grounds + trigger-level
// elements), entity-frame anchors with their descriptors, and standalone
// entities; the renderer writes each unit as a sentence from fixed
// skeletons, recording spans as it appends text. Every random choice comes
// from one seeded 64-bit Mersenne Twister through UniformBelow, so a seed
// yields the same bytes on every platform.

#ifndef SPATIALQA_SYNTH_H_
#define SPATIALQA_SYNTH_H_

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "spatialqa/document.h"
#include "spatialqa/schema.h"

namespace spatialqa {

// Word lists keyed by slot name. Entity and element slots use the canonical
// type names ("Finding", "Status", ...); the others are "MeasureHead",
// "MeasureHeadColon", "ValueColon", "LateralityAbbrev", "Diagnosis",
// "Reason", "DiscontinuousGround" (entries "upper|lower|eyelids")
// and "Filler".
struct Vocabulary {
  std::map<std::string, std::vector<std::string>> lists;

  static Vocabulary Default();

  // Throws Error(kVocabularyMissing) for a missing or empty list.
  const std::vector<std::string> &Get(std::string_view slot) const;
};

struct GeneratorConfig {
  uint64_t seed = 7;
  int note_count = 100;
  // Annotation counts of the reference corpus and its size; targets are
  // these scaled to note_count.
  std::array<double, kNumEntityTypes> entity_frequency;
  std::array<double, kNumElementTypes> element_frequency;
  double reference_notes = 600;
  // Share of two-ground frames rendered with a discontinuous first ground
  // ("upper and lower eyelids").
  double discontinuous_rate = 0.0;
  // Unannotated sentences per note, drawn from [0, max].
  int max_filler_sentences = 3;
  Vocabulary vocab = Vocabulary::Default();

  GeneratorConfig();

  std::array<int64_t, kNumEntityTypes> EntityTargets() const;
  std::array<int64_t, kNumElementTypes> ElementTargets() const;

  // Throws Error(kInvalidArgument) for negative counts or frequencies.
  void Check() const;
};

// Documents "note_0001" .. in order; every one validates against the
// default attachment map.
Corpus Generate(const GeneratorConfig &config);

enum class PerturbationMode {
  // Each entity is removed with probability |rate|, along with the elements
  // that use it.
  kDropOnly,
  // Each entity is, with probability |rate|, removed, shifted by one code
  // point at a boundary, or retyped to another type that keeps the layer
  // valid.
  kMixed,
};

// A second annotation layer derived from |doc|. Valid against the default
// map whenever |doc| is.
Document PerturbLayer(const Document &doc, double rate, PerturbationMode mode,
                      std::mt19937_64 &rng);

// Generate() plus a perturbed second layer.
Corpus GenerateDualLayer(const GeneratorConfig &config, double rate,
                         PerturbationMode mode = PerturbationMode::kMixed);

// Appends text while recording annotations; the renderer's only way of
// producing spans, so surfaces always equal their text slices.
class NoteBuilder {
 public:
  void Text(std::string_view text);
  // Appends |text| as an entity and returns its id.
  std::string Entity(std::string_view text, EntityType type);
  // Appends the pieces in order; the pieces flagged true become the
  // fragments of one discontinuous entity.
  std::string DiscontinuousEntity(
      const std::vector<std::pair<std::string, bool>> &pieces,
      EntityType type);
  // Annotates already appended text [start, end).
  std::string Annotate(int32_t start, int32_t end, EntityType type);
  void Link(ElementType element, const std::string &anchor_id,
            const std::string &filler_id);

  int32_t length() const { return length_; }
  Document Build(std::string doc_id) const;

 private:
  std::string NextId();

  std::string text_;
  int32_t length_ = 0;
  std::vector<EntityAnnotation> entities_;
  std::vector<FrameElementInstance> elements_;
};

// Sentence units, public so tests can render fixed examples.
struct DescriptorPlan {
  ElementType element;
  EntityType filler_type;
  std::string text;
};

struct AnchorPlan {
  EntityType type = EntityType::kFinding;
  std::string head;
  std::vector<DescriptorPlan> descriptors;
  // Measurement layout: "20/25 vision OD", or "intraocular pressure OD: 15"
  // when |colon_layout| is set.
  bool measurement = false;
  bool colon_layout = false;
};

struct SpatialFramePlan {
  std::string trigger;
  std::vector<AnchorPlan> figures;
  std::vector<std::string> grounds;
  std::vector<DescriptorPlan> trigger_elements;
  // With two grounds {"upper", "lower eyelids"}, renders "upper and lower
  // eyelids" and annotates the first ground as the discontinuous
  // "upper ... eyelids".
  bool discontinuous_ground = false;
};

// Renders one spatial-frame sentence, e.g. "mild disc edema in the left
// eye."
void RenderSpatialFrame(const SpatialFramePlan &plan, NoteBuilder &builder);

// Renders a sentence around one or more entity-frame anchors joined by
// "and", e.g. "20/20 vision OD and 20/30 vision OS."
void RenderAnchorSentence(const std::vector<AnchorPlan> &anchors,
                          std::string_view lead, NoteBuilder &builder);

}  // namespace spatialqa

#endif  // SPATIALQA_SYNTH_H_
