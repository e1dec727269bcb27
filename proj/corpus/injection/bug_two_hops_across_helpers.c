char *injection_bug_two_hops_across_helpers_pass(char *v) {
  return v;
}

int injection_bug_two_hops_across_helpers_main(int c) {
  char *x = recv(c);
  char *y = injection_bug_two_hops_across_helpers_pass(x);
  system(y);
  return 0;
}
