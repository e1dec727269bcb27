void injection_bug_helper_param_run(char *cmd) {
  system(cmd);
}

int injection_bug_helper_param_main(int c) {
  char *x = input();
  injection_bug_helper_param_run(x);
  return 0;
}
