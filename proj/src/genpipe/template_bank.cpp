// Copyright 2026 The labgrade Authors
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

#include "labgrade/genpipe/template_bank.hpp"

#include <algorithm>
#include <cctype>

namespace labgrade::genpipe {
namespace {

Topic decision_tree() {
  return {
      "decision tree",
      {"decision tree", "cart", "id3", "c4.5"},
      {"Iris", "Titanic survival", "Breast Cancer Wisconsin", "Mushroom", "Car Evaluation", "Adult Income"},
      {"accuracy", "macro F1 score", "balanced accuracy", "Gini impurity of the leaves"},
      {{"max_depth", {"3", "4", "5", "6", "8"}}, {"min_samples_leaf", {"2", "5", "10", "20"}}},
      {{
           {{"Implement a {keyword} classifier on the {dataset} dataset using {param} = {value} and report the "
             "{metric} on a held-out test split.",
             "Load {dataset}, split into train and test sets, fit a {keyword} with {param} set to {value}, predict "
             "on the test split and compute {metric}. Splits are chosen by the impurity decrease at each node."},
            {"Train a {keyword} on {dataset} and print the learned tree structure; limit {param} to {value} and "
             "state the {metric} you obtain.",
             "Fit the {keyword} with {param} = {value}, export the tree as text to show feature tests at each node, "
             "and evaluate {metric} on unseen rows of {dataset}."}},
           {{"Build a {keyword} pipeline for {dataset} that encodes categorical columns, tunes {param} around "
             "{value} with 5-fold cross-validation and reports {metric}.",
             "Encode categorical attributes, run a grid over {param} near {value} with 5-fold cross-validation, "
             "refit the best {keyword} on {dataset} and report {metric} with its fold variance."},
            {"Compare entropy and Gini splitting criteria for a {keyword} on {dataset} with {param} fixed at "
             "{value}; tabulate {metric} for both.",
             "Train two {keyword} models on {dataset} that differ only in criterion, keep {param} = {value}, and "
             "compare {metric}; entropy and Gini usually choose similar splits."}},
           {{"Implement a {keyword} from scratch (no library tree) for {dataset}: recursive splitting, {param} = "
             "{value} as a stopping rule, and {metric} on a test split.",
             "Write a recursive builder that scans candidate thresholds per feature, picks the largest impurity "
             "reduction, stops on {param} = {value}, then evaluates {metric} on {dataset} test rows."},
            {"Apply cost-complexity pruning to a {keyword} grown on {dataset}; choose the pruning strength by "
             "validation {metric} and relate it to {param} = {value}.",
             "Grow a full {keyword}, compute the pruning path, evaluate each alpha on validation {metric}, and "
             "compare the pruned tree against one limited by {param} = {value} on {dataset}."}},
       }},
      {{"Visualise the feature importances of the fitted tree.",
        "Plot impurity-based feature importances and comment on the top features."},
       {"Report how the number of leaves changes as {param} varies.",
        "Sweep {param}, count leaves for each setting and describe the growth."},
       {"Discuss whether the tree overfits by contrasting training and test results.",
        "Contrast training and test {metric}; a large gap indicates overfitting."}},
      {{"How does a decision tree choose the attribute to split on at each node?",
        "At each node the tree evaluates candidate splits and chooses the one with the largest reduction in "
        "impurity, measured by Gini impurity or entropy information gain, over the samples reaching that node."},
       {"Why do deep decision trees tend to overfit, and how can you prevent it?",
        "Deep trees keep splitting until leaves are pure, memorising noise in the training data; limiting depth, "
        "requiring a minimum number of samples per leaf, or pruning the tree reduces variance and overfitting."},
       {"What is the difference between Gini impurity and entropy?",
        "Gini impurity measures the probability of misclassifying a random sample while entropy measures the "
        "information content of the class distribution; both are zero for pure nodes and usually pick similar splits."},
       {"How does a decision tree handle continuous features?",
        "Continuous features are sorted and candidate thresholds between consecutive distinct values are tested; "
        "the threshold with the best impurity decrease becomes a binary split on that feature."}},
  };
}

Topic random_forest() {
  return {
      "random forest",
      {"random forest", "bagging", "ensemble of trees"},
      {"Wine Quality", "Covertype", "Heart Disease", "Credit Card Default", "Spambase", "Bank Marketing"},
      {"accuracy", "ROC AUC", "out-of-bag error", "weighted F1 score"},
      {{"n_estimators", {"50", "100", "200", "400"}}, {"max_features", {"sqrt", "log2", "0.5", "0.3"}}},
      {{
           {{"Train a {keyword} classifier on {dataset} with {param} = {value} and report {metric} on a test "
             "split.",
             "Load {dataset}, fit a {keyword} with {param} = {value}, predict the test split and compute {metric}; "
             "each tree sees a bootstrap sample and random feature subsets."},
            {"Use a {keyword} to predict the target in {dataset}; set {param} to {value} and compare its {metric} "
             "with a single decision tree.",
             "Fit one decision tree and a {keyword} with {param} = {value} on {dataset}, then compare {metric}; "
             "averaging many decorrelated trees lowers variance."}},
           {{"Tune a {keyword} on {dataset} by searching {param} around {value} and max_depth jointly; report the "
             "best {metric} from cross-validation.",
             "Run randomized or grid search over {param} near {value} and max_depth with cross-validation on "
             "{dataset}, refit the best {keyword}, and report {metric}."},
            {"Estimate generalisation of a {keyword} on {dataset} using the out-of-bag samples with {param} = "
             "{value}, and check it against test {metric}.",
             "Enable out-of-bag scoring, train with {param} = {value}, and compare the out-of-bag estimate with the "
             "test {metric} on {dataset}; both should agree closely."}},
           {{"Implement bagging of decision trees from scratch on {dataset} with {param} = {value} and random "
             "feature subsets; compare {metric} with a library {keyword}.",
             "Draw bootstrap samples, train a tree per sample with random feature subsets, aggregate by majority "
             "vote, and compare {metric} on {dataset} against the library {keyword} at {param} = {value}."},
            {"Handle class imbalance in {dataset} with a {keyword}: compare class weighting and resampling at "
             "{param} = {value} using {metric}.",
             "Train a {keyword} with balanced class weights and another on resampled data, keep {param} = {value}, "
             "and compare {metric} on {dataset} along with per-class recall."}},
       }},
      {{"Plot {metric} as a function of the number of trees.",
        "Grow the forest incrementally and plot {metric} to show it stabilises."},
       {"Rank features by permutation importance.",
        "Compute permutation importance on the test split and list the strongest features."},
       {"Report training time alongside the score.", "Time the fit and relate cost to the number of trees."}},
      {{"Why does a random forest usually generalise better than a single decision tree?",
        "A random forest averages many trees trained on bootstrap samples with random feature subsets, which "
        "decorrelates their errors and reduces variance without greatly increasing bias."},
       {"What is the out-of-bag error in a random forest?",
        "Each tree leaves out roughly one third of the rows from its bootstrap sample; predicting those rows "
        "with the trees that did not see them gives an unbiased estimate of test error."},
       {"What role does max_features play in a random forest?",
        "max_features limits how many features each split may consider, injecting randomness that decorrelates "
        "trees; smaller values increase diversity but may weaken individual trees."},
       {"How is a random forest prediction formed for classification and regression?",
        "For classification the forest takes a majority vote or averages class probabilities across trees, and "
        "for regression it averages the numeric predictions of all trees."}},
  };
}

Topic knn() {
  return {
      "k-nearest neighbors",
      {"nearest neighbor", "nearest neighbour", "knn", "k-nn", "k nn"},
      {"Iris", "Wine", "Digits", "Glass Identification", "Seeds", "Ionosphere"},
      {"accuracy", "macro F1 score", "confusion matrix", "top-1 error"},
      {{"k", {"3", "5", "7", "9", "11", "15"}}, {"metric", {"euclidean", "manhattan", "cosine", "minkowski"}}},
      {{
           {{"Implement a {keyword} classifier with {param} = {value} on the {dataset} dataset and report the "
             "{metric} on a held-out split.",
             "Scale the features of {dataset}, store the training rows, and for each test row find the {param} = "
             "{value} closest neighbours and take a majority vote; report {metric}."},
            {"Classify {dataset} samples with {keyword}; use {param} = {value}, standardise features first, and "
             "print the {metric}.",
             "Standardise {dataset}, fit {keyword} with {param} = {value}, and evaluate {metric}; unscaled features "
             "would dominate the distance computation."}},
           {{"Select the best {param} for {keyword} on {dataset} by cross-validation, starting the search at "
             "{value}, and plot {metric} against the choice.",
             "Loop over candidate values of {param} around {value}, run cross-validation for {keyword} on "
             "{dataset}, plot mean {metric}, and choose the value at the peak."},
            {"Compare uniform and distance-weighted voting for {keyword} on {dataset} with {param} = {value}; "
             "report {metric} for both.",
             "Fit two {keyword} models with {param} = {value}, one uniform and one distance weighted, and compare "
             "{metric} on {dataset}; weighting helps near class boundaries."}},
           {{"Implement {keyword} from scratch with a KD-tree for neighbour search on {dataset}; use {param} = "
             "{value} and verify {metric} matches brute force.",
             "Build a KD-tree over the training points, query the {param} = {value} nearest neighbours per test "
             "row, vote, and check that {metric} on {dataset} equals the brute-force result."},
            {"Study the curse of dimensionality for {keyword} on {dataset}: add noise features, keep {param} = "
             "{value}, and track {metric}.",
             "Append random noise columns to {dataset}, rerun {keyword} with {param} = {value}, and show {metric} "
             "degrading as irrelevant dimensions dilute distances."}},
       }},
      {{"Show the decision boundary on two selected features.",
        "Plot predictions over a grid of two features to show the decision regions."},
       {"Explain the effect of feature scaling with an experiment.",
        "Compare scores with and without standardisation."},
       {"Measure prediction latency for the test set.", "Time prediction; lazy learners pay cost at query time."}},
      {{"How does the choice of k affect the bias and variance of k-NN?",
        "A small k follows local noise and has high variance, while a large k smooths the decision boundary and "
        "increases bias; k is usually chosen by cross-validation."},
       {"Why must features be scaled before applying k-NN?",
        "k-NN relies on distances, so features with large numeric ranges dominate the metric; standardising or "
        "normalising puts every feature on a comparable scale."},
       {"Why is k-NN called a lazy learner?",
        "k-NN does no training beyond storing the data; all computation happens at prediction time when distances "
        "to stored examples are computed."},
       {"What distance metrics can k-NN use and when would you change the metric?",
        "Euclidean distance is common, Manhattan distance is robust to outliers in single coordinates, and cosine "
        "distance suits sparse or text features where direction matters more than magnitude."}},
  };
}

Topic svm() {
  return {
      "support vector machine",
      {"svm", "support vector", "svc"},
      {"Breast Cancer Wisconsin", "Sonar", "Banknote Authentication", "Pima Indians Diabetes", "Digits",
       "Ionosphere"},
      {"accuracy", "ROC AUC", "precision and recall", "hinge loss"},
      {{"C", {"0.1", "1", "10", "100"}}, {"gamma", {"0.001", "0.01", "0.1", "scale"}}},
      {{
           {{"Train a linear {keyword} on {dataset} with {param} = {value} and report the {metric} on a test "
             "split.",
             "Standardise {dataset}, fit a linear {keyword} with {param} = {value}, predict the test split and "
             "compute {metric}; the model maximises the margin between classes."},
            {"Classify {dataset} using a {keyword} with an RBF kernel; set {param} to {value} and report the "
             "number of support vectors with the {metric}.",
             "Fit an RBF {keyword} with {param} = {value} on scaled {dataset}, count support vectors, and evaluate "
             "{metric}; support vectors are the points on or inside the margin."}},
           {{"Grid-search C and gamma for an RBF {keyword} on {dataset}, centring {param} at {value}; report the "
             "best cross-validated {metric}.",
             "Build a pipeline with scaling and an RBF {keyword}, search C and gamma with {param} near {value} "
             "using cross-validation on {dataset}, and report the best {metric}."},
            {"Compare linear, polynomial and RBF kernels for a {keyword} on {dataset} with {param} = {value}; "
             "tabulate {metric}.",
             "Train one {keyword} per kernel with {param} = {value} on {dataset}, compare {metric}, and relate the "
             "winner to how separable the classes are."}},
           {{"Implement a linear {keyword} from scratch with sub-gradient descent on the hinge loss for {dataset}; "
             "use regularisation {param} = {value} and report {metric}.",
             "Minimise the regularised hinge loss with sub-gradient steps, use {param} = {value} for the penalty "
             "trade-off, and compare {metric} on {dataset} with a library solver."},
            {"Extend a {keyword} to multiclass {dataset} with one-vs-rest and one-vs-one strategies at {param} = "
             "{value}; compare {metric} and training time.",
             "Train one-vs-rest and one-vs-one {keyword} ensembles with {param} = {value} on {dataset}, compare "
             "{metric}, and note that one-vs-one trains many more small problems."}},
       }},
      {{"Visualise the margin and support vectors on two features.",
        "Plot the separating line, margins and highlight the support vectors."},
       {"Report how {metric} changes as {param} grows.", "Sweep {param} and describe the underfit-overfit trend."},
       {"Calibrate the decision scores into probabilities.",
        "Apply Platt scaling and check the calibration curve."}},
      {{"What is the margin in a support vector machine and why maximise it?",
        "The margin is the distance between the separating hyperplane and the closest training points; a wider "
        "margin gives a classifier that generalises better to unseen data."},
       {"What does the C parameter control in an SVM?",
        "C trades off margin width against training errors; a large C penalises misclassification heavily and "
        "fits the data tightly, while a small C allows violations and a wider margin."},
       {"What is the kernel trick?",
        "The kernel trick computes inner products in a high-dimensional feature space through a kernel function, "
        "letting the SVM learn non-linear boundaries without constructing the features explicitly."},
       {"What are support vectors?",
        "Support vectors are the training points that lie on or inside the margin; they alone determine the "
        "hyperplane, and removing other points leaves the solution unchanged."}},
  };
}

Topic linear_regression() {
  return {
      "linear regression",
      {"linear regression", "regression", "least squares", "ridge", "lasso"},
      {"Boston Housing", "California Housing", "Diabetes", "Auto MPG", "Energy Efficiency", "Concrete Strength"},
      {"root mean squared error", "mean absolute error", "R squared", "adjusted R squared"},
      {{"alpha", {"0.01", "0.1", "1.0", "10.0"}}, {"degree", {"1", "2", "3"}}},
      {{
           {{"Fit a {keyword} model on {dataset} and report the {metric} on a test split; include an L2 penalty "
             "with {param} = {value}.",
             "Split {dataset}, fit {keyword} with an L2 penalty of {param} = {value}, predict the test targets and "
             "compute {metric}; coefficients show each feature's linear effect."},
            {"Predict the target of {dataset} with {keyword}; plot residuals and report {metric} with {param} = "
             "{value}.",
             "Fit {keyword} on {dataset} with {param} = {value}, plot residuals against fitted values to check "
             "assumptions, and report {metric}."}},
           {{"Compare ordinary least squares, ridge and lasso {keyword} on {dataset}, tuning {param} from {value}; "
             "report {metric} and the number of zero coefficients.",
             "Fit plain, ridge and lasso variants on {dataset}, tune {param} starting at {value}, report {metric}, "
             "and count coefficients lasso drives to zero."},
            {"Add polynomial features to {keyword} on {dataset} with {param} = {value} and use cross-validation "
             "{metric} to detect overfitting.",
             "Expand features polynomially with {param} = {value}, fit {keyword} on {dataset}, and compare "
             "cross-validated {metric} with the training score to spot overfitting."}},
           {{"Implement {keyword} from scratch on {dataset} with batch gradient descent and the normal equation; "
             "use {param} = {value} and compare {metric}.",
             "Derive the squared loss gradient, iterate gradient descent until convergence, solve the normal "
             "equation, and confirm both give the same {metric} on {dataset} with {param} = {value}."},
            {"Diagnose multicollinearity in {dataset} for {keyword} using variance inflation factors; refit with "
             "{param} = {value} and report {metric}.",
             "Compute variance inflation factors, drop or regularise correlated predictors with {param} = {value}, "
             "refit {keyword} on {dataset}, and compare {metric}."}},
       }},
      {{"Interpret the three largest coefficients.", "Standardise inputs and explain the largest coefficients."},
       {"Check the residuals for heteroscedasticity.", "Plot residual spread against fitted values."},
       {"Report a learning curve for the model.", "Plot train and validation error against training size."}},
      {{"What assumptions does linear regression make?",
        "Linear regression assumes a linear relationship, independent errors with constant variance, little "
        "multicollinearity among predictors, and for inference normally distributed residuals."},
       {"How do ridge and lasso regularisation differ?",
        "Ridge adds an L2 penalty that shrinks all coefficients smoothly, while lasso adds an L1 penalty that can "
        "drive some coefficients exactly to zero and so performs feature selection."},
       {"What does R squared measure?",
        "R squared is the fraction of target variance explained by the model, one minus the residual sum of squares "
        "divided by the total sum of squares around the mean."},
       {"When would you prefer gradient descent over the normal equation?",
        "The normal equation inverts a matrix whose cost grows cubically with the number of features, so gradient "
        "descent is preferred for many features or very large datasets."}},
  };
}

Topic logistic_regression() {
  return {
      "logistic regression",
      {"logistic regression", "logistic", "logit"},
      {"Titanic survival", "Pima Indians Diabetes", "Heart Disease", "Bank Marketing", "Spambase",
       "Breast Cancer Wisconsin"},
      {"accuracy", "ROC AUC", "log loss", "F1 score"},
      {{"C", {"0.01", "0.1", "1", "10"}}, {"penalty", {"l1", "l2", "elasticnet"}}},
      {{
           {{"Train a {keyword} classifier on {dataset} with {param} = {value} and report the {metric} on a test "
             "split.",
             "Scale {dataset}, fit {keyword} with {param} = {value}, predict class probabilities and compute "
             "{metric}; the sigmoid maps the linear score to a probability."},
            {"Use {keyword} to model {dataset}; set {param} to {value}, print the coefficients as odds ratios and "
             "report {metric}.",
             "Fit {keyword} with {param} = {value} on {dataset}, exponentiate coefficients to get odds ratios, and "
             "report {metric} on the test split."}},
           {{"Tune the decision threshold of a {keyword} model on {dataset} with {param} = {value} to maximise "
             "{metric}, and plot the precision-recall curve.",
             "Fit {keyword} with {param} = {value}, sweep the probability threshold on validation data, pick the "
             "best {metric}, and plot precision against recall for {dataset}."},
            {"Compare L1 and L2 regularised {keyword} on {dataset} with {param} = {value}; report {metric} and "
             "which features survive.",
             "Train L1 and L2 variants with {param} = {value} on {dataset}, compare {metric}, and list features "
             "whose L1 coefficients stay non-zero."}},
           {{"Implement {keyword} from scratch on {dataset} using gradient descent on the cross-entropy loss with "
             "{param} = {value}; verify {metric} against a library model.",
             "Write the sigmoid and cross-entropy gradient, run gradient descent with regularisation {param} = "
             "{value}, and check {metric} on {dataset} against a library fit."},
            {"Build a multinomial {keyword} for {dataset} with softmax outputs and {param} = {value}; report "
             "{metric} and a confusion matrix.",
             "Use softmax over class scores, optimise the multinomial cross-entropy with {param} = {value}, and "
             "report {metric} plus the confusion matrix for {dataset}."}},
       }},
      {{"Plot the ROC curve and mark the chosen threshold.", "Draw the ROC curve and annotate the threshold."},
       {"Explain one misclassified example.", "Inspect a wrong prediction and its feature contributions."},
       {"Check the calibration of predicted probabilities.", "Plot a reliability diagram for the probabilities."}},
      {{"Why is logistic regression a classification method despite its name?",
        "It models the log odds of the positive class as a linear function and passes the score through a "
        "sigmoid to produce a probability, which is thresholded to give a class label."},
       {"What loss function does logistic regression minimise?",
        "Logistic regression minimises the cross-entropy or log loss, the negative log likelihood of the observed "
        "labels under the predicted Bernoulli probabilities, which is convex in the weights."},
       {"How do you interpret a logistic regression coefficient?",
        "A coefficient is the change in log odds for a one unit increase in the feature; exponentiating it gives "
        "the multiplicative change in the odds of the positive class."},
       {"How does regularisation help logistic regression?",
        "Regularisation penalises large weights, reducing overfitting and keeping the optimisation stable when "
        "classes are separable; L1 also selects features by zeroing weights."}},
  };
}

Topic cnn() {
  return {
      "convolutional neural network",
      {"cnn", "convolution", "conv net", "convnet"},
      {"MNIST", "Fashion-MNIST", "CIFAR-10", "SVHN", "EMNIST Letters", "Kuzushiji-MNIST"},
      {"test accuracy", "top-5 accuracy", "cross-entropy loss", "per-class accuracy"},
      {{"filters", {"16", "32", "64", "128"}}, {"kernel_size", {"3", "5", "7"}}},
      {{
           {{"Build a small {keyword} for {dataset} with two convolution layers of {param} = {value} and report "
             "{metric} after five epochs.",
             "Stack two convolution layers with {param} = {value}, ReLU and max pooling, add a dense softmax head, "
             "train on {dataset} for five epochs with cross-entropy and report {metric}."},
            {"Train a {keyword} image classifier on {dataset}; use {param} = {value}, normalise pixels, and plot "
             "training curves with the final {metric}.",
             "Normalise {dataset} pixels, define a {keyword} with {param} = {value}, train with Adam, plot loss and "
             "accuracy curves, and report {metric} on the test set."}},
           {{"Add batch normalisation and dropout to a {keyword} on {dataset} with {param} = {value}; compare "
             "{metric} against the plain network.",
             "Train the baseline {keyword} and a variant with batch normalisation and dropout, both with {param} = "
             "{value}, on {dataset}, and compare {metric} and convergence speed."},
            {"Apply data augmentation to a {keyword} trained on {dataset} with {param} = {value}; measure the "
             "change in {metric}.",
             "Add random crops, flips or shifts to {dataset} training images, train the {keyword} with {param} = "
             "{value}, and compare {metric} against training without augmentation."}},
           {{"Implement a convolution layer forward and backward pass from scratch and train a tiny {keyword} on "
             "{dataset} with {param} = {value}; report {metric}.",
             "Implement sliding-window convolution and its gradients with respect to inputs and kernels, check them "
             "numerically, train the {keyword} on {dataset} with {param} = {value}, and report {metric}."},
            {"Fine-tune a pretrained {keyword} backbone on {dataset} by freezing early layers; use {param} = "
             "{value} in the new head and report {metric}.",
             "Load pretrained weights, freeze early convolution blocks, attach a head with {param} = {value}, "
             "fine-tune on {dataset} with a low learning rate, and report {metric}."}},
       }},
      {{"Visualise the learned filters of the first layer.", "Plot first-layer kernels as small images."},
       {"Show a confusion matrix of the test predictions.", "Plot the confusion matrix and name confused classes."},
       {"Count the trainable parameters per layer.", "Print the parameter count of each layer."}},
      {{"Why are convolutional layers suited to images?",
        "Convolutions share weights across spatial positions and connect locally, so they detect the same pattern "
        "anywhere in the image with far fewer parameters than dense layers."},
       {"What does pooling do in a CNN?",
        "Pooling downsamples feature maps by taking the maximum or average over small windows, reducing computation "
        "and giving some invariance to small translations."},
       {"How do stride and padding affect the output size of a convolution?",
        "Output size equals input size plus twice the padding minus the kernel size, divided by the stride, plus "
        "one; padding preserves borders and larger strides shrink the map."},
       {"Why do we use ReLU activations in CNNs?",
        "ReLU is cheap, does not saturate for positive inputs, and mitigates vanishing gradients, so deep "
        "convolutional networks train faster than with sigmoid or tanh."}},
  };
}

Topic rnn() {
  return {
      "recurrent neural network",
      {"rnn", "recurrent", "sequence model"},
      {"IMDB reviews", "daily minimum temperatures", "airline passengers", "Shakespeare text", "Reuters newswire",
       "sine wave"},
      {"accuracy", "perplexity", "mean absolute error", "validation loss"},
      {{"hidden_size", {"32", "64", "128", "256"}}, {"sequence_length", {"20", "50", "100"}}},
      {{
           {{"Train a simple {keyword} on {dataset} with {param} = {value} and report {metric} on held-out "
             "sequences.",
             "Window {dataset} into sequences, build a {keyword} layer with {param} = {value} and a dense output, "
             "train with backpropagation through time and report {metric}."},
            {"Use a {keyword} to model {dataset}; choose {param} = {value}, pad or window the sequences and print "
             "the {metric}.",
             "Preprocess {dataset} into fixed windows, train the {keyword} with {param} = {value}, and evaluate "
             "{metric} on a chronological or random test split."}},
           {{"Compare a {keyword} against a feed-forward baseline on {dataset} with {param} = {value}; report "
             "{metric} for both.",
             "Train a dense baseline on flattened windows and a {keyword} with {param} = {value} on {dataset}, then "
             "compare {metric}; recurrence shares weights across time steps."},
            {"Apply gradient clipping to a {keyword} on {dataset} with {param} = {value} and show its effect on "
             "training stability and {metric}.",
             "Train the {keyword} with and without gradient norm clipping at {param} = {value} on {dataset}, plot "
             "the loss curves, and compare {metric}."}},
           {{"Implement a vanilla {keyword} cell and backpropagation through time from scratch for {dataset} with "
             "{param} = {value}; report {metric}.",
             "Write the recurrent update with tanh, unroll over time, accumulate gradients backwards through every "
             "step, train on {dataset} with {param} = {value}, and report {metric}."},
            {"Build a bidirectional {keyword} for {dataset} with {param} = {value} and compare {metric} with a "
             "unidirectional model.",
             "Run one recurrent pass forward and one backward, concatenate hidden states with {param} = {value}, "
             "train on {dataset}, and compare {metric} with the one-directional model."}},
       }},
      {{"Plot predictions against the true sequence.", "Overlay predicted and actual values over time."},
       {"Report how {metric} changes with {param}.", "Sweep {param} and tabulate the effect on the score."},
       {"Inspect the gradient norms during training.", "Log gradient norms per epoch to spot explosion."}},
      {{"What is the vanishing gradient problem in recurrent networks?",
        "Backpropagating through many time steps multiplies many small Jacobians, so gradients shrink "
        "exponentially and early inputs barely influence learning of long-range dependencies."},
       {"What is backpropagation through time?",
        "The recurrent network is unrolled across the sequence and standard backpropagation is applied to the "
        "unrolled graph, summing gradients of the shared weights over all time steps."},
       {"Why does an RNN share weights across time steps?",
        "Sharing weights lets the network process sequences of any length with a fixed number of parameters and "
        "apply the same transformation at every position."},
       {"What is gradient clipping and why is it used with RNNs?",
        "Gradient clipping rescales gradients whose norm exceeds a threshold, preventing exploding gradients that "
        "destabilise recurrent network training."}},
  };
}

Topic lstm() {
  return {
      "long short-term memory network",
      {"lstm", "long short", "gru", "gated recurrent"},
      {"IMDB reviews", "household power consumption", "stock closing prices", "Penn Treebank", "SMS spam",
       "air quality sensor readings"},
      {"accuracy", "root mean squared error", "perplexity", "F1 score"},
      {{"units", {"32", "64", "128", "256"}}, {"dropout", {"0.1", "0.2", "0.3", "0.5"}}},
      {{
           {{"Train an {keyword} on {dataset} with {param} = {value} and report {metric} on the test split.",
             "Prepare {dataset} as sequences, build an {keyword} layer with {param} = {value} followed by a dense "
             "output, train with Adam and report {metric}."},
            {"Forecast or classify {dataset} with an {keyword}; set {param} to {value}, normalise inputs and report "
             "{metric}.",
             "Normalise {dataset}, window it into sequences, train the {keyword} with {param} = {value}, invert "
             "the scaling for predictions and report {metric}."}},
           {{"Compare an {keyword} with a GRU on {dataset} using {param} = {value}; report {metric} and training "
             "time.",
             "Train an {keyword} and a GRU of matching {param} = {value} on {dataset}, compare {metric} and time "
             "per epoch; the GRU has fewer gates and parameters."},
            {"Stack two {keyword} layers for {dataset} with {param} = {value} and early stopping; report {metric}.",
             "Stack two recurrent layers returning sequences, use {param} = {value}, monitor validation loss with "
             "early stopping on {dataset}, and report {metric}."}},
           {{"Implement the {keyword} cell equations from scratch (input, forget, output gates) and train on "
             "{dataset} with {param} = {value}; report {metric}.",
             "Code the gate equations and cell state update, backpropagate through time, train on {dataset} with "
             "{param} = {value}, and compare {metric} with a library layer."},
            {"Add an attention layer over {keyword} outputs for {dataset} with {param} = {value}; compare {metric} "
             "with using only the last hidden state.",
             "Score every hidden state, softmax the scores into weights, form a context vector, train on {dataset} "
             "with {param} = {value}, and compare {metric} with the last-state model."}},
       }},
      {{"Plot the forget gate activations for one sequence.", "Record forget gate values over time and plot them."},
       {"Report the effect of sequence length on {metric}.", "Vary the window length and tabulate the score."},
       {"Save and reload the trained model.", "Serialise the weights and verify identical predictions."}},
      {{"How does an LSTM avoid the vanishing gradient problem?",
        "The cell state is updated additively and controlled by gates, so gradients can flow across many time "
        "steps without being repeatedly multiplied by small factors."},
       {"What do the forget, input and output gates do in an LSTM?",
        "The forget gate decides what to erase from the cell state, the input gate what new information to write, "
        "and the output gate what part of the cell state to expose as the hidden state."},
       {"How does a GRU differ from an LSTM?",
        "A GRU merges the forget and input gates into an update gate and has no separate cell state, so it has fewer "
        "parameters and often trains faster with similar accuracy."},
       {"Why is dropout applied carefully in recurrent networks?",
        "Dropping different units at every time step disrupts memory, so recurrent dropout reuses the same mask "
        "across time or applies dropout only to non-recurrent connections."}},
  };
}

Topic optimizer() {
  return {
      "gradient-based optimizer",
      {"optimizer", "optimiser", "gradient descent", "sgd", "adam", "rmsprop", "momentum"},
      {"MNIST", "California Housing", "Fashion-MNIST", "synthetic Rosenbrock function", "Wine Quality",
       "CIFAR-10"},
      {"final training loss", "test accuracy", "epochs to converge", "validation loss"},
      {{"learning_rate", {"0.001", "0.01", "0.05", "0.1"}}, {"batch_size", {"16", "32", "64", "128"}}},
      {{
           {{"Train the same model on {dataset} with a {keyword} using {param} = {value} and plot the {metric} "
             "per epoch.",
             "Fix the model architecture, train on {dataset} with the {keyword} at {param} = {value}, record the "
             "loss every epoch, and report {metric}."},
            {"Compare plain SGD and SGD with momentum as the {keyword} on {dataset} with {param} = {value}; report "
             "{metric}.",
             "Train twice on {dataset}, once with plain SGD and once with momentum 0.9, both at {param} = {value}, "
             "and compare {metric}; momentum damps oscillation."}},
           {{"Benchmark SGD, RMSProp and Adam as the {keyword} on {dataset} with {param} = {value}; tabulate "
             "{metric} for each.",
             "Train identical models on {dataset} with each optimizer at {param} = {value}, plot loss curves, and "
             "compare {metric}; adaptive methods rescale steps per parameter."},
            {"Add a learning-rate schedule to the {keyword} on {dataset} starting from {param} = {value}; compare "
             "step decay and cosine annealing by {metric}.",
             "Train with step decay and with cosine annealing starting at {param} = {value} on {dataset}, plot the "
             "schedules and compare {metric}."}},
           {{"Implement the Adam update rule from scratch as the {keyword} and train a model on {dataset} with "
             "{param} = {value}; verify {metric} against a library optimizer.",
             "Maintain first and second moment estimates with bias correction, apply the Adam step with {param} = "
             "{value}, train on {dataset}, and match {metric} with the library version."},
            {"Study the sensitivity of the {keyword} to {param} on {dataset}: sweep around {value} on a log scale "
             "and report {metric}.",
             "Run a log-scale sweep of {param} around {value} on {dataset}, plot {metric} per setting, and identify "
             "the stable range before divergence."}},
       }},
      {{"Plot the loss landscape along the update direction.", "Evaluate the loss along a line through the weights."},
       {"Report wall-clock time per epoch.", "Time each epoch and compare optimizers on cost."},
       {"Repeat the runs with three random seeds.", "Report mean and spread over three seeds."}},
      {{"How does momentum improve gradient descent?",
        "Momentum accumulates an exponentially decaying average of past gradients, which speeds movement along "
        "consistent directions and damps oscillation across steep ravines."},
       {"How does Adam adapt the learning rate?",
        "Adam keeps running averages of gradients and squared gradients, corrects their initial bias, and divides "
        "each step by the root of the second moment, giving per-parameter step sizes."},
       {"What happens if the learning rate is too large or too small?",
        "A learning rate that is too large overshoots minima and can diverge, while one that is too small converges "
        "very slowly and may stall on plateaus."},
       {"What is the difference between batch, mini-batch and stochastic gradient descent?",
        "Batch descent uses the full dataset per step, stochastic uses one example, and mini-batch uses small "
        "groups, trading gradient noise against computation per update."}},
  };
}

Topic fallback_topic() {
  return {
      "",
      {},
      {"a public benchmark dataset", "a dataset of your choice", "a synthetic dataset you generate",
       "the course dataset", "an open government dataset", "a Kaggle dataset"},
      {"accuracy", "root mean squared error", "F1 score", "a metric you justify"},
      {{"random_seed", {"0", "7", "42", "2024"}}, {"test_size", {"0.2", "0.25", "0.3"}}},
      {{
           {{"Implement and evaluate {keyword} on {dataset}; fix {param} = {value} and report {metric}.",
             "Describe {keyword}, implement it on {dataset} with {param} = {value}, evaluate on held-out data, and "
             "report {metric} with a short discussion."},
            {"Apply {keyword} to {dataset} with {param} = {value}; document each step and report {metric}.",
             "Prepare {dataset}, apply {keyword} with {param} = {value}, and report {metric} along with the main "
             "design choices."}},
           {{"Implement and evaluate {keyword} on {dataset}, compare it with a simple baseline using {param} = "
             "{value}, and report {metric}.",
             "Implement {keyword} and a baseline on {dataset} with {param} = {value}, compare {metric}, and explain "
             "where {keyword} helps."},
            {"Tune the main settings of {keyword} on {dataset} by cross-validation with {param} = {value}; report "
             "{metric}.",
             "Identify the key settings of {keyword}, tune them by cross-validation on {dataset} with {param} = "
             "{value}, and report {metric}."}},
           {{"Implement {keyword} from first principles on {dataset} without high-level libraries, use {param} = "
             "{value}, and verify {metric} against a reference implementation.",
             "Implement the core computation of {keyword} directly, apply it to {dataset} with {param} = {value}, "
             "and verify {metric} against a reference implementation."},
            {"Run an ablation study of {keyword} on {dataset} with {param} = {value}, removing one component at a "
             "time and reporting {metric}.",
             "Remove one component of {keyword} at a time, retrain on {dataset} with {param} = {value}, and tabulate "
             "{metric} to show each component's contribution."}},
       }},
      {},
      {},
  };
}

std::vector<Clause> shared_variations() {
  return {
      {"Use a stratified split so class proportions are preserved.",
       "Stratify the split by label to preserve class proportions."},
      {"Hold out 30 percent of the rows for testing and fix the random seed.",
       "Use a 70/30 split with a fixed seed for reproducibility."},
      {"Remove rows with missing values before training and report how many were dropped.",
       "Drop incomplete rows and report the count removed."},
      {"Impute missing values with the column median before training.",
       "Fill missing values with medians computed on the training split."},
      {"Standardise every numeric feature to zero mean and unit variance.",
       "Fit a standard scaler on training data and apply it to both splits."},
      {"Min-max scale the features into the unit interval.",
       "Fit min-max scaling on training data only to avoid leakage."},
      {"Report results averaged over five random train-test splits.",
       "Repeat the split five times and average the scores."},
      {"Use nested cross-validation to avoid optimistic estimates.",
       "Tune in an inner loop and evaluate in an outer loop."},
      {"Balance the classes by oversampling the minority class in the training split only.",
       "Oversample minority rows in training data only, never in the test split."},
      {"Keep only the ten most informative features chosen by mutual information.",
       "Rank features by mutual information and keep the top ten."},
      {"Reduce the features with PCA to retain 95 percent of the variance first.",
       "Project onto principal components covering 95 percent variance."},
      {"Inject 10 percent label noise into the training set and observe robustness.",
       "Flip ten percent of training labels and compare against clean training."},
      {"Train on only 20 percent of the available training rows and discuss the impact.",
       "Subsample the training data and discuss the learning curve."},
      {"Log every experiment configuration and result to a CSV file.",
       "Write each configuration and score as a CSV row."},
      {"Set a time budget of two minutes for the whole training run.",
       "Keep training within the stated time budget and report timing."},
      {"Detect and clip outliers beyond three standard deviations.",
       "Clip values beyond three standard deviations before training."},
  };
}

std::vector<Clause> shared_deliverables() {
  return {
      {"Submit a notebook with code, plots and a short conclusion.",
       "The notebook should contain the code, the plots and a conclusion."},
      {"Write a function that returns the trained model and its score.",
       "Wrap training in a function returning the model and the score."},
      {"Print a results table comparing all configurations you tried.",
       "Tabulate every configuration with its score."},
      {"Include a paragraph interpreting the errors the model makes.",
       "Discuss typical errors and their likely causes."},
      {"Add unit tests for the data preprocessing functions.", "Test preprocessing functions on small inputs."},
      {"Save the final predictions for the test split to a CSV file.", "Write test predictions to CSV."},
      {"Explain which hyperparameter mattered most and why.", "Identify the most influential hyperparameter."},
      {"Report the confusion between the two most mixed-up outcomes.",
       "Identify the most frequently confused outcomes."},
      {"Keep the code modular with separate load, train and evaluate steps.",
       "Structure the code into load, train and evaluate steps."},
      {"Document the random seeds so the run can be reproduced exactly.", "List every seed used."},
  };
}

std::vector<Clause> generic_viva() {
  return {
      {"How did you split your data into training and test sets, and why?",
       "The data is divided into training and test portions, often stratified and with a fixed seed, so the model "
       "is evaluated on unseen examples and the result is reproducible."},
      {"Which evaluation metric did you use and why is it appropriate?",
       "The metric should match the task: accuracy or F1 score for balanced or imbalanced classification, and "
       "error measures such as root mean squared error for regression."},
      {"How would you detect overfitting in your solution?",
       "Overfitting shows as a large gap between training and validation performance; cross-validation and "
       "learning curves reveal it, and regularisation or more data reduce it."},
      {"What preprocessing steps did you apply and what problem does each solve?",
       "Preprocessing such as handling missing values, scaling features and encoding categories makes the data "
       "consistent and suitable for the model, and must be fitted on training data only."},
      {"How did you choose the hyperparameters of your model?",
       "Hyperparameters are chosen by searching candidate values with cross-validation on the training data and "
       "selecting the setting with the best validation score."},
  };
}

TemplateBank build_bank() {
  TemplateBank bank;
  bank.topics = {decision_tree(), random_forest(), knn(),  svm(),  linear_regression(), logistic_regression(),
                 cnn(),           rnn(),           lstm(), optimizer()};
  bank.fallback = fallback_topic();
  bank.variations = shared_variations();
  bank.deliverables = shared_deliverables();
  bank.viva = generic_viva();
  return bank;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void add_clauses(std::vector<std::string>& docs, const std::vector<Clause>& clauses) {
  for (const auto& c : clauses) {
    docs.emplace_back(c.question);
    docs.emplace_back(c.answer);
  }
}

}  // namespace

const TemplateBank& template_bank() {
  static const TemplateBank bank = build_bank();
  return bank;
}

const Topic* find_topic(std::string_view keyword) {
  const std::string k = lower(keyword);
  // Longest alias wins, so "logistic regression" beats "regression".
  const Topic* best = nullptr;
  std::size_t best_len = 0;
  for (const auto& topic : template_bank().topics) {
    for (auto alias : topic.aliases) {
      if (alias.size() > best_len && k.find(alias) != std::string::npos) {
        best = &topic;
        best_len = alias.size();
      }
    }
  }
  return best;
}

std::vector<std::string> bank_documents() {
  std::vector<std::string> docs;
  const auto& bank = template_bank();
  auto add_topic = [&](const Topic& t) {
    for (const auto& tier : t.tiers) add_clauses(docs, tier);
    add_clauses(docs, t.variations);
    add_clauses(docs, t.viva);
  };
  for (const auto& t : bank.topics) add_topic(t);
  add_topic(bank.fallback);
  add_clauses(docs, bank.variations);
  add_clauses(docs, bank.deliverables);
  add_clauses(docs, bank.viva);
  return docs;
}

}  // namespace labgrade::genpipe
