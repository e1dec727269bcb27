int cwe415_ok_one_per_arm_c_main(int c) {
  char *p = calloc(4, 4);
  if (c) {
    free(p);
  } else {
    free(p);
  }
  return 0;
}
