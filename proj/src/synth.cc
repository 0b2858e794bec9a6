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

#include "spatialqa/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <utility>
#include <variant>

#include "spatialqa/errors.h"
#include "spatialqa/split.h"
#include "spatialqa/utf8.h"

namespace spatialqa {
namespace {

double Uniform01(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

const std::string &Pick(const std::vector<std::string> &list,
                        std::mt19937_64 &rng) {
  return list[UniformBelow(rng, list.size())];
}

template <typename T>
void Shuffle(std::vector<T> &v, std::mt19937_64 &rng) {
  for (size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[UniformBelow(rng, i)]);
  }
}

std::vector<size_t> ShuffledIndices(size_t n, std::mt19937_64 &rng) {
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  Shuffle(idx, rng);
  return idx;
}

// All-uppercase words ("OD") are written after the head.
bool IsAbbreviation(std::string_view text) {
  return !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
    return c >= 'A' && c <= 'Z';
  });
}

// Verb triggers put the ground first: "examination of the macula reveals
// drusen."
constexpr std::string_view kVerbTriggers[] = {"reveals", "shows"};

constexpr ElementType kPreHead[] = {
    ElementType::kNegation,    ElementType::kCertainty,
    ElementType::kQuantity,    ElementType::kStatus,
    ElementType::kSizeDesc,    ElementType::kSize,
    ElementType::kMorphologic, ElementType::kComposition,
    ElementType::kDistributionPattern, ElementType::kPathphysio,
    ElementType::kLaterality,  ElementType::kSpecificLocation,
};

const DescriptorPlan *FindDescriptor(const std::vector<DescriptorPlan> &ds,
                                     ElementType e) {
  for (const auto &d : ds) {
    if (d.element == e) return &d;
  }
  return nullptr;
}

// Renders an anchor noun phrase and links its descriptors. A word-form
// laterality is left to the caller when |defer_laterality| is set.
std::string RenderPhrase(const AnchorPlan &a, NoteBuilder &b,
                         bool defer_laterality,
                         const DescriptorPlan **deferred) {
  std::vector<std::pair<ElementType, std::string>> links;
  auto emit = [&](const DescriptorPlan &d) {
    links.emplace_back(d.element, b.Entity(d.text, d.filler_type));
  };
  const DescriptorPlan *lat =
      FindDescriptor(a.descriptors, ElementType::kLaterality);
  bool lat_after = lat && IsAbbreviation(lat->text);
  std::string anchor;
  if (a.measurement) {
    const DescriptorPlan *value =
        FindDescriptor(a.descriptors, ElementType::kValue);
    if (a.colon_layout) {
      anchor = b.Entity(a.head, a.type);
      if (lat) {
        b.Text(" ");
        emit(*lat);
      }
      if (value) {
        b.Text(": ");
        emit(*value);
      }
    } else {
      if (value) {
        emit(*value);
        b.Text(" ");
      }
      anchor = b.Entity(a.head, a.type);
      if (lat) {
        b.Text(" ");
        emit(*lat);
      }
    }
  } else {
    for (ElementType e : kPreHead) {
      const DescriptorPlan *d = FindDescriptor(a.descriptors, e);
      if (!d) continue;
      if (e == ElementType::kLaterality) {
        if (lat_after) continue;
        if (defer_laterality) {
          *deferred = d;
          continue;
        }
      }
      emit(*d);
      b.Text(" ");
    }
    anchor = b.Entity(a.head, a.type);
    if (lat && lat_after) {
      b.Text(" ");
      emit(*lat);
    }
    if (const auto *d = FindDescriptor(a.descriptors, ElementType::kDirection)) {
      b.Text(" ");
      emit(*d);
    }
    if (const auto *d =
            FindDescriptor(a.descriptors, ElementType::kImpactOnSide)) {
      b.Text(", ");
      emit(*d);
    }
    if (const auto *d = FindDescriptor(a.descriptors, ElementType::kTemporal)) {
      b.Text(" ");
      emit(*d);
    }
    if (const auto *d = FindDescriptor(a.descriptors,
                                       ElementType::kAssociatedDiagnosis)) {
      b.Text(", secondary to ");
      emit(*d);
    }
  }
  for (const auto &[e, id] : links) b.Link(e, anchor, id);
  return anchor;
}

void JoinList(size_t i, size_t n, NoteBuilder &b) {
  if (i == 0) return;
  b.Text(i + 1 == n ? " and " : ", ");
}

EntityType FillerTypeOf(ElementType e) {
  switch (e) {
    case ElementType::kFigure:
    case ElementType::kDiagnosis:
    case ElementType::kReason:
    case ElementType::kAssociatedDiagnosis:
      return EntityType::kFinding;
    case ElementType::kGround:
      return EntityType::kAnatomy;
    case ElementType::kHedge:
    case ElementType::kNegation:
    case ElementType::kCertainty:
      return EntityType::kAssertion;
    case ElementType::kMedication:
      return EntityType::kDrug;
    case ElementType::kValue:
      return EntityType::kQuantity;
    default:
      return EntityType::kOtherDescriptor;
  }
}

std::string VocabSlot(ElementType e) {
  if (e == ElementType::kMedication) return "Drug";
  return std::string(Name(e));
}

struct AnchorSentencePlan {
  std::vector<AnchorPlan> anchors;
  std::string lead;
};

struct StandalonePlan {
  std::string before;
  std::string text;
  std::string after;
  EntityType type;
};

struct FillerPlan {
  std::string text;
};

using Unit = std::variant<SpatialFramePlan, AnchorSentencePlan,
                          StandalonePlan, FillerPlan>;

enum class Role { kFigure, kMeasurement, kFinding, kProcedure };

struct PoolEntry {
  AnchorPlan plan;
  Role role;
  size_t frame = 0;
};

bool Eligible(const PoolEntry &p, ElementType e) {
  if (p.role == Role::kMeasurement) {
    return e == ElementType::kValue || e == ElementType::kLaterality;
  }
  if (p.plan.type == EntityType::kProcedure) {
    return e == ElementType::kLaterality || e == ElementType::kTemporal ||
           e == ElementType::kNegation ||
           e == ElementType::kSpecificLocation || e == ElementType::kStatus;
  }
  return e != ElementType::kValue;
}

void Count(const DescriptorPlan &d,
           std::array<int64_t, kNumEntityTypes> &counts) {
  ++counts[Index(d.filler_type)];
}

void Count(const AnchorPlan &a, std::array<int64_t, kNumEntityTypes> &counts) {
  ++counts[Index(a.type)];
  for (const auto &d : a.descriptors) Count(d, counts);
}

std::vector<std::string> SplitBar(const std::string &s) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    size_t bar = s.find('|', pos);
    out.push_back(s.substr(pos, bar - pos));
    if (bar == std::string::npos) break;
    pos = bar + 1;
  }
  return out;
}

void RenderUnit(const Unit &unit, NoteBuilder &b) {
  if (const auto *f = std::get_if<SpatialFramePlan>(&unit)) {
    RenderSpatialFrame(*f, b);
  } else if (const auto *s = std::get_if<AnchorSentencePlan>(&unit)) {
    RenderAnchorSentence(s->anchors, s->lead, b);
  } else if (const auto *s = std::get_if<StandalonePlan>(&unit)) {
    b.Text(s->before);
    b.Entity(s->text, s->type);
    b.Text(s->after);
  } else {
    b.Text(std::get<FillerPlan>(unit).text);
  }
}

StandalonePlan Standalone(EntityType type, const Vocabulary &v,
                          std::mt19937_64 &rng) {
  switch (type) {
    case EntityType::kAnatomy:
      return {"", Pick(v.Get("Anatomy"), rng), " unremarkable.", type};
    case EntityType::kDevice:
      return {"wearing ", Pick(v.Get("Device"), rng), ".", type};
    case EntityType::kDrug:
      return {"continue ", Pick(v.Get("Drug"), rng), ".", type};
    case EntityType::kProcedure:
      return {"s/p ", Pick(v.Get("Procedure"), rng), ".", type};
    case EntityType::kFinding:
      return {"", Pick(v.Get("Finding"), rng), " noted.", type};
    case EntityType::kLocationDescriptor:
      return {"", Pick(v.Get("SpecificLocation"), rng), " region spared.",
              type};
    case EntityType::kAssertion:
      return {"patient ", Pick(v.Get("Assertion"), rng), " pain.", type};
    case EntityType::kQuantity:
      return {"", Pick(v.Get("ValueColon"), rng), " prior visits.", type};
    case EntityType::kSpatialTrigger:
      return {"seen ", Pick(v.Get("SpatialTrigger"), rng), " clinic.", type};
    default:
      return {"", Pick(v.Get("Status"), rng), " overall.", type};
  }
}

}  // namespace

Vocabulary Vocabulary::Default() {
  Vocabulary v;
  auto &l = v.lists;
  // Repeats weight the draw toward the common triggers.
  l["SpatialTrigger"] = {"in", "in", "in", "in", "in", "of", "of", "of",
                         "are", "are", "at", "within", "involving", "along",
                         "on", "reveals", "shows"};
  l["Finding"] = {"edema", "drusen", "hemorrhage", "optic neuropathy",
                  "cataract", "scarring", "neovascularization",
                  "cotton wool spots", "exudates", "pallor", "cupping",
                  "ptosis", "opacity", "atrophy", "detachment", "floaters",
                  "injection", "tear"};
  l["Diagnosis"] = {"glaucoma", "diabetic retinopathy", "macular degeneration",
                    "uveitis"};
  l["Reason"] = {"trauma", "inflammation", "hypertension"};
  l["AssociatedDiagnosis"] = {"diabetes", "hypertension", "sarcoidosis",
                              "multiple sclerosis"};
  l["Anatomy"] = {"eye", "retina", "macula", "cornea", "conjunctiva", "lens",
                  "optic nerve", "iris", "eyelid", "fovea", "vitreous",
                  "anterior chamber", "optic disc"};
  l["DiscontinuousGround"] = {"upper|lower|eyelids", "superior|inferior|arcades",
                              "nasal|temporal|quadrants"};
  l["Device"] = {"contact lens", "punctal plug", "glasses"};
  l["Drug"] = {"atropine", "prednisolone", "latanoprost", "timolol"};
  l["Procedure"] = {"cataract surgery", "vitrectomy", "laser photocoagulation",
                    "YAG capsulotomy"};
  l["MeasureHead"] = {"vision", "visual acuity", "acuity"};
  l["MeasureHeadColon"] = {"intraocular pressure", "IOP", "pressure"};
  l["Value"] = {"20/20", "20/25", "20/30", "20/40", "20/60", "0.8"};
  l["ValueColon"] = {"14", "16", "18", "21"};
  l["Laterality"] = {"left", "right", "bilateral"};
  l["LateralityAbbrev"] = {"OD", "OS", "OU"};
  l["Status"] = {"mild", "moderate", "severe", "stable", "improved",
                 "worsening", "trace"};
  l["SizeDesc"] = {"small", "large", "tiny"};
  l["Size"] = {"2 mm", "0.5 disc diameters", "3x4 mm"};
  l["Morphologic"] = {"round", "flame-shaped", "dot-blot"};
  l["Composition"] = {"pigmented", "serous", "hemorrhagic"};
  l["DistributionPattern"] = {"diffuse", "scattered", "focal", "confluent"};
  l["Pathphysio"] = {"autoimmune", "physiologic", "ischemic"};
  l["Direction"] = {"outward", "to the right", "inferiorly"};
  l["ImpactOnSide"] = {"right greater than left", "worse in the left eye",
                       "smaller than left"};
  l["Temporal"] = {"since last visit", "for 2 weeks", "today",
                   "previously noted"};
  l["Negation"] = {"no", "negative for"};
  l["Certainty"] = {"possible", "probable", "consistent with", "significant"};
  l["Hedge"] = {"possibly", "likely", "questionable"};
  l["Quantity"] = {"multiple", "few", "two", "several"};
  l["RelativePosition"] = {"superior", "inferior", "adjacent", "central"};
  l["SpecificLocation"] = {"disc", "peripapillary", "subretinal",
                           "retroorbital", "perifoveal", "intraretinal"};
  l["Assertion"] = {"denies", "reports"};
  l["Filler"] = {"patient returns for follow-up.", "return in 3 months.",
                 "discussed findings with patient.", "history reviewed.",
                 "questions answered."};
  return v;
}

const std::vector<std::string> &Vocabulary::Get(std::string_view slot) const {
  auto it = lists.find(std::string(slot));
  if (it == lists.end() || it->second.empty()) {
    throw Error(ErrorCode::kVocabularyMissing, std::string(slot));
  }
  return it->second;
}

GeneratorConfig::GeneratorConfig() {
  using E = EntityType;
  entity_frequency.fill(0);
  entity_frequency[Index(E::kSpatialTrigger)] = 1715;
  entity_frequency[Index(E::kFinding)] = 7308;
  entity_frequency[Index(E::kAnatomy)] = 2424;
  entity_frequency[Index(E::kDevice)] = 14;
  entity_frequency[Index(E::kDrug)] = 22;
  entity_frequency[Index(E::kProcedure)] = 182;
  entity_frequency[Index(E::kOtherDescriptor)] = 9782;
  entity_frequency[Index(E::kQuantity)] = 366;
  entity_frequency[Index(E::kAssertion)] = 1616;
  entity_frequency[Index(E::kLocationDescriptor)] = 132;
  element_frequency = {2261, 2094, 397, 18, 132, 7,    18,  45,
                       43,   83,   36,  3464, 48, 97,  85,  1636,
                       3051, 101,  1066, 921, 75, 298, 72,  318};
}

std::array<int64_t, kNumEntityTypes> GeneratorConfig::EntityTargets() const {
  std::array<int64_t, kNumEntityTypes> out{};
  for (int i = 0; i < kNumEntityTypes; ++i) {
    out[i] = std::llround(entity_frequency[i] * note_count / reference_notes);
  }
  return out;
}

std::array<int64_t, kNumElementTypes> GeneratorConfig::ElementTargets() const {
  std::array<int64_t, kNumElementTypes> out{};
  for (int i = 0; i < kNumElementTypes; ++i) {
    out[i] = std::llround(element_frequency[i] * note_count / reference_notes);
  }
  return out;
}

void GeneratorConfig::Check() const {
  auto fail = [](const std::string &m) {
    throw Error(ErrorCode::kInvalidArgument, m);
  };
  if (note_count < 0) fail("note count must be non-negative");
  if (!(reference_notes > 0)) fail("reference_notes must be positive");
  for (double f : entity_frequency) {
    if (!(f >= 0)) fail("entity frequencies must be non-negative");
  }
  for (double f : element_frequency) {
    if (!(f >= 0)) fail("element frequencies must be non-negative");
  }
  if (!(discontinuous_rate >= 0 && discontinuous_rate <= 1)) {
    fail("discontinuous_rate must lie in [0, 1]");
  }
  if (max_filler_sentences < 0) fail("max_filler_sentences must be non-negative");
}

// NoteBuilder

void NoteBuilder::Text(std::string_view text) {
  text_.append(text);
  length_ += CodepointLength(text);
}

std::string NoteBuilder::NextId() {
  return "T" + std::to_string(entities_.size() + 1);
}

std::string NoteBuilder::Entity(std::string_view text, EntityType type) {
  int32_t start = length_;
  Text(text);
  return Annotate(start, length_, type);
}

std::string NoteBuilder::Annotate(int32_t start, int32_t end,
                                  EntityType type) {
  Utf8Text view(text_);
  EntityAnnotation e;
  e.id = NextId();
  e.type = type;
  e.span = Span(start, end);
  e.surface = std::string(view.Slice(start, end));
  entities_.push_back(std::move(e));
  return entities_.back().id;
}

std::string NoteBuilder::DiscontinuousEntity(
    const std::vector<std::pair<std::string, bool>> &pieces,
    EntityType type) {
  std::vector<Fragment> fragments;
  std::string surface;
  for (const auto &[piece, flagged] : pieces) {
    int32_t start = length_;
    Text(piece);
    if (!flagged) continue;
    if (!fragments.empty() && fragments.back().end == start) {
      fragments.back().end = length_;
      surface += piece;
    } else {
      fragments.push_back({start, length_});
      if (!surface.empty()) surface += ' ';
      surface += piece;
    }
  }
  EntityAnnotation e;
  e.id = NextId();
  e.type = type;
  e.span = Span(std::move(fragments));
  e.surface = std::move(surface);
  entities_.push_back(std::move(e));
  return entities_.back().id;
}

void NoteBuilder::Link(ElementType element, const std::string &anchor_id,
                       const std::string &filler_id) {
  elements_.push_back({element, anchor_id, filler_id});
}

Document NoteBuilder::Build(std::string doc_id) const {
  Document doc;
  doc.doc_id = std::move(doc_id);
  doc.text = text_;
  doc.entities = entities_;
  doc.elements = elements_;
  Canonicalize(doc);
  return doc;
}

// Rendering

void RenderSpatialFrame(const SpatialFramePlan &plan, NoteBuilder &b) {
  std::string trigger;
  std::vector<std::string> figures;
  const DescriptorPlan *deferred = nullptr;
  std::vector<std::pair<ElementType, std::string>> trigger_links;
  const DescriptorPlan *hedge =
      FindDescriptor(plan.trigger_elements, ElementType::kHedge);
  const DescriptorPlan *relpos =
      FindDescriptor(plan.trigger_elements, ElementType::kRelativePosition);
  std::string deferred_id;
  if (!plan.figures.empty()) {
    const DescriptorPlan *lat =
        FindDescriptor(plan.figures[0].descriptors, ElementType::kLaterality);
    if (lat && !IsAbbreviation(lat->text)) deferred = lat;
  }

  auto render_figures = [&] {
    if (plan.figures.empty()) {
      b.Text("findings");
      return;
    }
    for (size_t i = 0; i < plan.figures.size(); ++i) {
      JoinList(i, plan.figures.size(), b);
      figures.push_back(RenderPhrase(plan.figures[i], b, i == 0, &deferred));
    }
  };
  std::vector<std::string> grounds;
  auto render_grounds = [&] {
    // The first figure's word laterality reads as part of the ground phrase.
    if (deferred) {
      deferred_id = b.Entity(deferred->text, deferred->filler_type);
      b.Text(" ");
    }
    if (relpos) {
      trigger_links.emplace_back(relpos->element,
                                 b.Entity(relpos->text, relpos->filler_type));
      b.Text(" ");
    }
    if (plan.grounds.empty()) {
      b.Text("area");
      return;
    }
    if (plan.discontinuous_ground && plan.grounds.size() == 2) {
      const std::string &second = plan.grounds[1];
      size_t space = second.find(' ');
      std::string modifier = second.substr(0, space);
      std::string head =
          space == std::string::npos ? std::string() : second.substr(space + 1);
      int32_t second_start = b.length() + CodepointLength(plan.grounds[0]) +
                             CodepointLength(" and ");
      grounds.push_back(b.DiscontinuousEntity(
          {{plan.grounds[0], true}, {" and " + modifier + " ", false},
           {head, true}},
          EntityType::kAnatomy));
      grounds.push_back(
          b.Annotate(second_start, b.length(), EntityType::kAnatomy));
      return;
    }
    for (size_t i = 0; i < plan.grounds.size(); ++i) {
      JoinList(i, plan.grounds.size(), b);
      grounds.push_back(b.Entity(plan.grounds[i], EntityType::kAnatomy));
    }
  };
  auto render_trigger = [&] {
    if (hedge) {
      trigger_links.emplace_back(hedge->element,
                                 b.Entity(hedge->text, hedge->filler_type));
      b.Text(" ");
    }
    trigger = b.Entity(plan.trigger, EntityType::kSpatialTrigger);
  };

  bool verb = std::find(std::begin(kVerbTriggers), std::end(kVerbTriggers),
                        plan.trigger) != std::end(kVerbTriggers);
  if (verb) {
    b.Text("examination of the ");
    render_grounds();
    b.Text(" ");
    render_trigger();
    b.Text(" ");
    render_figures();
  } else {
    render_figures();
    b.Text(" ");
    render_trigger();
    b.Text(plan.trigger == "are" ? " noted throughout the " : " the ");
    render_grounds();
  }
  for (ElementType e : {ElementType::kDiagnosis, ElementType::kReason,
                        ElementType::kMedication}) {
    const DescriptorPlan *d = FindDescriptor(plan.trigger_elements, e);
    if (!d) continue;
    b.Text(e == ElementType::kDiagnosis ? ", suggestive of "
           : e == ElementType::kReason  ? " due to "
                                        : " after ");
    trigger_links.emplace_back(e, b.Entity(d->text, d->filler_type));
  }
  b.Text(".");
  for (const auto &f : figures) b.Link(ElementType::kFigure, trigger, f);
  for (const auto &g : grounds) b.Link(ElementType::kGround, trigger, g);
  for (const auto &[e, id] : trigger_links) b.Link(e, trigger, id);
  if (deferred && !figures.empty()) {
    b.Link(ElementType::kLaterality, figures.front(), deferred_id);
  }
}

void RenderAnchorSentence(const std::vector<AnchorPlan> &anchors,
                          std::string_view lead, NoteBuilder &b) {
  b.Text(lead);
  for (size_t i = 0; i < anchors.size(); ++i) {
    if (i > 0) b.Text(" and ");
    RenderPhrase(anchors[i], b, false, nullptr);
  }
  b.Text(".");
}

// Generation

Corpus Generate(const GeneratorConfig &config) {
  config.Check();
  const Vocabulary &v = config.vocab;
  std::mt19937_64 rng(config.seed);
  const auto T = config.EntityTargets();
  const auto E = config.ElementTargets();
  auto target = [&](EntityType t) { return T[Index(t)]; };
  auto etarget = [&](ElementType e) { return E[Index(e)]; };

  // Spatial frames.
  size_t n_trig = static_cast<size_t>(target(EntityType::kSpatialTrigger));
  std::vector<SpatialFramePlan> frames(n_trig);
  for (auto &f : frames) f.trigger = Pick(v.Get("SpatialTrigger"), rng);

  auto spread = [&](int64_t total) {
    std::vector<int64_t> per(n_trig, 0);
    if (n_trig == 0) return per;
    for (auto &p : per) p = total / static_cast<int64_t>(n_trig);
    auto order = ShuffledIndices(n_trig, rng);
    for (int64_t i = 0; i < total % static_cast<int64_t>(n_trig); ++i) {
      ++per[order[i]];
    }
    return per;
  };
  auto figure_counts = spread(etarget(ElementType::kFigure));
  auto ground_counts = spread(etarget(ElementType::kGround));

  std::array<int64_t, kNumElementTypes> trigger_realized{};
  for (ElementType e :
       {ElementType::kHedge, ElementType::kDiagnosis,
        ElementType::kRelativePosition, ElementType::kReason,
        ElementType::kMedication}) {
    size_t k = static_cast<size_t>(
        std::min<int64_t>(etarget(e), static_cast<int64_t>(n_trig)));
    auto order = ShuffledIndices(n_trig, rng);
    for (size_t i = 0; i < k; ++i) {
      frames[order[i]].trigger_elements.push_back(
          {e, FillerTypeOf(e), Pick(v.Get(VocabSlot(e)), rng)});
    }
    trigger_realized[Index(e)] = static_cast<int64_t>(k);
  }

  for (size_t i = 0; i < n_trig; ++i) {
    auto &f = frames[i];
    if (ground_counts[i] == 2 && config.discontinuous_rate > 0 &&
        Uniform01(rng) < config.discontinuous_rate) {
      auto parts = SplitBar(Pick(v.Get("DiscontinuousGround"), rng));
      if (parts.size() == 3) {
        f.discontinuous_ground = true;
        f.grounds = {parts[0], parts[1] + " " + parts[2]};
        continue;
      }
    }
    for (int64_t g = 0; g < ground_counts[i]; ++g) {
      f.grounds.push_back(Pick(v.Get("Anatomy"), rng));
    }
  }

  // Entity-frame anchors: figures first, then the standalone ones.
  std::vector<PoolEntry> pool;
  for (size_t i = 0; i < n_trig; ++i) {
    for (int64_t k = 0; k < figure_counts[i]; ++k) {
      pool.push_back({AnchorPlan{}, Role::kFigure, i});
    }
  }
  size_t n_fig = pool.size();
  int64_t proc_fig =
      std::min<int64_t>(static_cast<int64_t>(n_fig),
                        target(EntityType::kProcedure) / 2);
  {
    auto order = ShuffledIndices(n_fig, rng);
    for (int64_t i = 0; i < proc_fig; ++i) {
      pool[order[i]].plan.type = EntityType::kProcedure;
    }
  }
  for (auto &p : pool) {
    p.plan.head = Pick(v.Get(p.plan.type == EntityType::kProcedure
                                 ? "Procedure"
                                 : "Finding"),
                       rng);
  }
  int64_t extra_findings = std::max<int64_t>(
      0, target(EntityType::kFinding) -
             (static_cast<int64_t>(n_fig) - proc_fig) -
             trigger_realized[Index(ElementType::kDiagnosis)] -
             trigger_realized[Index(ElementType::kReason)] -
             etarget(ElementType::kAssociatedDiagnosis));
  int64_t measurements =
      std::min(etarget(ElementType::kValue), extra_findings);
  for (int64_t i = 0; i < extra_findings; ++i) {
    PoolEntry p{AnchorPlan{}, i < measurements ? Role::kMeasurement
                                               : Role::kFinding};
    if (p.role == Role::kMeasurement) {
      p.plan.measurement = true;
      p.plan.colon_layout = UniformBelow(rng, 3) == 0;
      p.plan.head = Pick(
          v.Get(p.plan.colon_layout ? "MeasureHeadColon" : "MeasureHead"), rng);
    } else {
      p.plan.head = Pick(v.Get("Finding"), rng);
    }
    pool.push_back(std::move(p));
  }
  int64_t extra_procedures =
      std::max<int64_t>(0, target(EntityType::kProcedure) - proc_fig);
  for (int64_t i = 0; i < extra_procedures; ++i) {
    PoolEntry p{AnchorPlan{}, Role::kProcedure};
    p.plan.type = EntityType::kProcedure;
    p.plan.head = Pick(v.Get("Procedure"), rng);
    pool.push_back(std::move(p));
  }

  // Descriptors, one element type at a time over distinct anchors.
  int64_t location_descriptors = target(EntityType::kLocationDescriptor);
  int64_t quantity_entities = std::max<int64_t>(
      0, target(EntityType::kQuantity) - etarget(ElementType::kValue));
  for (ElementType e :
       AttachmentMap::Default().LicensedElements(AnchorKind::kEntityFrame)) {
    std::vector<size_t> eligible;
    for (size_t i = 0; i < pool.size(); ++i) {
      if (Eligible(pool[i], e)) eligible.push_back(i);
    }
    Shuffle(eligible, rng);
    size_t k = static_cast<size_t>(
        std::min<int64_t>(etarget(e), static_cast<int64_t>(eligible.size())));
    for (size_t j = 0; j < k; ++j) {
      PoolEntry &p = pool[eligible[j]];
      DescriptorPlan d{e, FillerTypeOf(e), ""};
      if (e == ElementType::kLaterality) {
        bool abbrev = p.role == Role::kMeasurement || UniformBelow(rng, 2) == 0;
        d.text = Pick(v.Get(abbrev ? "LateralityAbbrev" : "Laterality"), rng);
      } else if (e == ElementType::kValue) {
        d.text = Pick(v.Get(p.plan.colon_layout ? "ValueColon" : "Value"), rng);
      } else {
        d.text = Pick(v.Get(VocabSlot(e)), rng);
      }
      if (e == ElementType::kSpecificLocation && location_descriptors > 0) {
        d.filler_type = EntityType::kLocationDescriptor;
        --location_descriptors;
      }
      if (e == ElementType::kQuantity && quantity_entities > 0) {
        d.filler_type = EntityType::kQuantity;
        --quantity_entities;
      }
      p.plan.descriptors.push_back(std::move(d));
    }
  }

  std::vector<Unit> units;
  std::array<int64_t, kNumEntityTypes> counts{};
  for (auto &p : pool) {
    if (p.role == Role::kFigure) {
      frames[p.frame].figures.push_back(std::move(p.plan));
    }
  }
  for (auto &f : frames) {
    ++counts[Index(EntityType::kSpatialTrigger)];
    for (const auto &a : f.figures) Count(a, counts);
    counts[Index(EntityType::kAnatomy)] +=
        static_cast<int64_t>(f.grounds.size());
    for (const auto &d : f.trigger_elements) Count(d, counts);
    units.emplace_back(std::move(f));
  }
  static const std::vector<std::string> kLeads = {"", "there is ", "noted "};
  for (size_t i = 0; i < pool.size(); ++i) {
    PoolEntry &p = pool[i];
    if (p.role == Role::kFigure) continue;
    AnchorSentencePlan s;
    Count(p.plan, counts);
    if (p.role == Role::kProcedure) {
      s.lead = "s/p ";
    } else if (p.role == Role::kFinding) {
      s.lead = Pick(kLeads, rng);
    }
    s.anchors.push_back(std::move(p.plan));
    // Measurements sometimes pair up: "20/20 vision OD and 20/30 vision OS".
    if (p.role == Role::kMeasurement && i + 1 < pool.size() &&
        pool[i + 1].role == Role::kMeasurement && UniformBelow(rng, 2) == 0) {
      Count(pool[i + 1].plan, counts);
      s.anchors.push_back(std::move(pool[i + 1].plan));
      ++i;
    }
    units.emplace_back(std::move(s));
  }
  for (EntityType t : AllEntityTypes()) {
    for (int64_t d = counts[Index(t)]; d < target(t); ++d) {
      units.emplace_back(Standalone(t, v, rng));
    }
  }

  Shuffle(units, rng);
  size_t n = static_cast<size_t>(config.note_count);
  std::vector<std::vector<Unit>> notes(n);
  for (size_t i = 0; i < units.size() && n > 0; ++i) {
    notes[i % n].push_back(std::move(units[i]));
  }
  int width = std::max<int>(4, static_cast<int>(std::to_string(n).size()));
  Corpus corpus;
  for (size_t i = 0; i < n; ++i) {
    auto &note = notes[i];
    uint64_t fillers = UniformBelow(
        rng, static_cast<uint64_t>(config.max_filler_sentences) + 1);
    if (note.empty() && fillers == 0) fillers = 1;
    for (uint64_t k = 0; k < fillers; ++k) {
      note.emplace_back(FillerPlan{Pick(v.Get("Filler"), rng)});
    }
    Shuffle(note, rng);
    NoteBuilder b;
    for (size_t k = 0; k < note.size(); ++k) {
      if (k > 0) b.Text(UniformBelow(rng, 3) == 0 ? "\n" : " ");
      RenderUnit(note[k], b);
    }
    b.Text("\n");
    char id[32];
    std::snprintf(id, sizeof(id), "note_%0*zu", width, i + 1);
    corpus.documents.push_back(b.Build(id));
  }
  return corpus;
}

// Perturbation

Document PerturbLayer(const Document &doc, double rate, PerturbationMode mode,
                      std::mt19937_64 &rng) {
  Document out = doc;
  Utf8Text text(out.text);
  std::set<std::string> anchors;
  for (const auto &el : out.elements) anchors.insert(el.anchor_id);
  std::set<std::pair<Span, EntityType>> taken;
  for (const auto &e : out.entities) taken.insert({e.span, e.type});
  std::set<std::string> dropped;

  for (auto &e : out.entities) {
    if (!(Uniform01(rng) < rate)) continue;
    int action = mode == PerturbationMode::kDropOnly
                     ? 0
                     : static_cast<int>(UniformBelow(rng, 3));
    if (action == 1 && e.span.contiguous()) {
      Fragment f = e.span.fragments.front();
      bool at_start = UniformBelow(rng, 2) == 0;
      bool grow = UniformBelow(rng, 2) == 0;
      int32_t delta = grow ? -1 : 1;
      if (at_start) {
        f.start += delta;
      } else {
        f.end -= delta;
      }
      Span shifted(f.start, f.end);
      if (shifted.WellFormed(text.length()) &&
          SurfaceOf(text, shifted).find('\n') == std::string::npos &&
          !taken.count({shifted, e.type})) {
        taken.erase({e.span, e.type});
        e.span = shifted;
        e.surface = SurfaceOf(text, shifted);
        taken.insert({e.span, e.type});
        continue;
      }
    } else if (action == 2) {
      std::vector<EntityType> candidates;
      bool is_anchor = anchors.count(e.id) > 0;
      for (EntityType t : AllEntityTypes()) {
        if (t == e.type || taken.count({e.span, t})) continue;
        if (is_anchor && AnchorKindFor(t) != AnchorKindFor(e.type)) continue;
        candidates.push_back(t);
      }
      if (!candidates.empty()) {
        EntityType t = candidates[UniformBelow(rng, candidates.size())];
        taken.erase({e.span, e.type});
        e.type = t;
        taken.insert({e.span, e.type});
        continue;
      }
    }
    taken.erase({e.span, e.type});
    dropped.insert(e.id);
  }
  std::erase_if(out.entities, [&](const EntityAnnotation &e) {
    return dropped.count(e.id) > 0;
  });
  std::erase_if(out.elements, [&](const FrameElementInstance &el) {
    return dropped.count(el.anchor_id) || dropped.count(el.filler_id);
  });
  return out;
}

Corpus GenerateDualLayer(const GeneratorConfig &config, double rate,
                         PerturbationMode mode) {
  Corpus corpus = Generate(config);
  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  for (const auto &doc : corpus.documents) {
    corpus.second_layer.push_back(PerturbLayer(doc, rate, mode, rng));
  }
  return corpus;
}

}  // namespace spatialqa
