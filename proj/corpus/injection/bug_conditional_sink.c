int injection_bug_conditional_sink_main(int c) {
  char *x = input();
  if (c) {
    exec(x);
  }
  return 0;
}
