#include "ltlnrm/nrm/trainer.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ltlnrm/core/kv_config.hpp"

namespace ltlnrm::nrm {

Adam::Adam(std::size_t feature_dim, std::size_t num_symbols, double learning_rate, double beta1, double beta2,
           double epsilon)
    : lr_(learning_rate),
      beta1_(beta1),
      beta2_(beta2),
      eps_(epsilon),
      m_((feature_dim + 1) * num_symbols, 0.0),
      v_((feature_dim + 1) * num_symbols, 0.0) {}

void Adam::step(Grounder& g, const GrounderGradient& grad) {
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  auto update = [&](double& param, double gradient, std::size_t slot) {
    m_[slot] = beta1_ * m_[slot] + (1.0 - beta1_) * gradient;
    v_[slot] = beta2_ * v_[slot] + (1.0 - beta2_) * gradient * gradient;
    param -= lr_ * (m_[slot] / c1) / (std::sqrt(v_[slot] / c2) + eps_);
  };
  auto w = g.weights().data();
  const auto gw = grad.weights.data();
  for (std::size_t i = 0; i < w.size(); ++i) update(w[i], gw[i], i);
  auto b = g.bias();
  for (std::size_t j = 0; j < b.size(); ++j) update(b[j], grad.bias[j], w.size() + j);
}

GrounderTrainer::GrounderTrainer(Grounder initial, const GrounderProfile& profile, std::uint64_t seed)
    : profile_(profile),
      grounder_(std::move(initial)),
      best_(grounder_),
      adam_(grounder_.feature_dim(), grounder_.num_symbols(), profile.learning_rate),
      rng_(make_rng(seed, "grounder-batches")),
      best_val_loss_(std::numeric_limits<double>::infinity()) {
  if (profile_.batch_size == 0 || profile_.accumulation == 0) {
    throw std::invalid_argument("batch size and accumulation must be positive");
  }
}

const NrmModel& GrounderTrainer::model_for(const TaskPtr& task) {
  auto it = models_.find(task.get());
  if (it == models_.end()) {
    NrmModel model(init_from_machine(task->machine, profile_.tau, profile_.init_magnitude));
    it = models_.emplace(task.get(), std::make_pair(task, std::move(model))).first;
  }
  return it->second.second;
}

double GrounderTrainer::mean_loss(const Grounder& g, const std::deque<EpisodePtr>& episodes) {
  double total = 0.0;
  for (const auto& e : episodes) {
    total += loss(forward(model_for(e->task), g, e->observations).reward_probs, e->rewards);
  }
  return episodes.empty() ? 0.0 : total / static_cast<double>(episodes.size());
}

TrainRound GrounderTrainer::run_round(const ReplayBuffers& buffers) {
  const auto& train = buffers.train();
  if (train.empty()) throw std::invalid_argument("train buffer is empty");

  const std::size_t per_step = profile_.batch_size * profile_.accumulation;
  const double scale = 1.0 / static_cast<double>(per_step);
  GrounderGradient acc(grounder_.feature_dim(), grounder_.num_symbols());
  double train_loss = 0.0;
  std::size_t batches_in_acc = 0;
  for (std::size_t step = 0; step < profile_.update_steps; ++step) {
    for (std::size_t i = 0; i < profile_.batch_size; ++i) {
      const auto& e = train[static_cast<std::size_t>(uniform_int(rng_, 0, static_cast<int>(train.size()) - 1))];
      trained_ids_.insert(e->id);
      acc.add(loss_and_gradient(model_for(e->task), grounder_, e->observations, e->rewards), scale);
    }
    if (++batches_in_acc == profile_.accumulation) {
      adam_.step(grounder_, acc);
      train_loss += acc.loss;
      acc = GrounderGradient(grounder_.feature_dim(), grounder_.num_symbols());
      batches_in_acc = 0;
    }
  }
  const std::size_t optimizer_steps = profile_.update_steps / profile_.accumulation;
  if (batches_in_acc > 0) {
    const double rescale = static_cast<double>(profile_.accumulation) / static_cast<double>(batches_in_acc);
    GrounderGradient partial(grounder_.feature_dim(), grounder_.num_symbols());
    partial.add(acc, rescale);
    adam_.step(grounder_, partial);
    train_loss += partial.loss;
  }
  const std::size_t total_steps = optimizer_steps + (batches_in_acc > 0 ? 1 : 0);

  TrainRound r;
  r.round = ++rounds_;
  r.train_loss = total_steps ? train_loss / static_cast<double>(total_steps) : 0.0;
  const auto& val = buffers.validation();
  if (val.empty()) {
    r.val_loss = r.train_loss;
  } else {
    for (const auto& e : val) validated_ids_.insert(e->id);
    r.val_loss = mean_loss(grounder_, val);
  }
  r.grounder_accuracy = grounder_accuracy(grounder_, val.empty() ? train : val);
  if (r.val_loss < best_val_loss_) {
    best_val_loss_ = r.val_loss;
    best_ = grounder_;
    rounds_since_best_ = 0;
  } else {
    ++rounds_since_best_;
  }
  return r;
}

double grounder_accuracy(const Grounder& g, const std::deque<EpisodePtr>& episodes) {
  std::size_t hits = 0;
  std::size_t total = 0;
  for (const auto& e : episodes) {
    for (std::size_t t = 0; t < e->oracle_symbols.size(); ++t) {
      hits += g.argmax(e->observations.row(t)) == e->oracle_symbols[t];
      ++total;
    }
  }
  return total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0;
}

TrainResult train_grounder(const ReplayBuffers& buffers, Grounder initial, const GrounderProfile& profile,
                           std::size_t max_rounds, std::uint64_t seed) {
  GrounderTrainer trainer(std::move(initial), profile, seed);
  TrainResult result;
  while (trainer.rounds() < max_rounds && !trainer.should_stop()) result.log.push_back(trainer.run_round(buffers));
  result.early_stopped = trainer.should_stop();
  result.grounder = trainer.best();
  return result;
}

std::string training_log_csv(const std::vector<TrainRound>& rounds) {
  std::ostringstream out;
  out << "round,train_loss,val_loss,grounder_accuracy\n";
  for (const auto& r : rounds) {
    out << r.round << ',' << format_double(r.train_loss) << ',' << format_double(r.val_loss) << ','
        << format_double(r.grounder_accuracy) << '\n';
  }
  return out.str();
}

}  // namespace ltlnrm::nrm
