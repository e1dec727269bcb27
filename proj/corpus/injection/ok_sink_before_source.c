int injection_ok_sink_before_source_main(int c) {
  char *x = "ls";
  exec(x);
  x = input();
  return 0;
}
